// Copyright 2026 The qcomb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qcomb/comb.hpp"
#include "qcomb/controllization.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/random.hpp"
#include "qcomb/randomization.hpp"
#include "qcomb/serialize.hpp"
#include "qcomb/tolerances.hpp"
#include "qcomb/version.hpp"

namespace combctl {

namespace {

using qcomb::ComplexMatrix;

const std::set<std::string> kExperiments{"exact-controllization", "scaling",
                                         "coefficients", "switch-compare",
                                         "comb-audit"};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

template <class T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw UsageError("config field '" + key + "' has the wrong type");
  }
}

ComplexMatrix hamiltonian_for(const ExperimentConfig& c) {
  if (c.hamiltonian) return *c.hamiltonian;
  qcomb::Rng rng = qcomb::make_rng(c.seed);
  return qcomb::random_bounded_hamiltonian(2, rng);
}

qcomb::RandomizationOptions randomization_options(const ExperimentConfig& c) {
  qcomb::RandomizationOptions o;
  o.mode = c.mode == "sampled" ? qcomb::RandomizationMode::sampled
                               : qcomb::RandomizationMode::average;
  o.seed = c.seed;
  o.trials = c.trials;
  o.threads = c.threads;
  return o;
}

Report exact_controllization(const ExperimentConfig& c) {
  Report r;
  Json rows = Json::array();
  double worst = 0.0;
  for (std::size_t s = 0; s < c.seeds; ++s) {
    qcomb::Rng rng = qcomb::make_rng(c.seed, s);
    double residual = 0.0;
    if (c.method == "multicopy") {
      const ComplexMatrix u = qcomb::haar_special_unitary(c.d, rng);
      const ComplexMatrix v = qcomb::special_unitary_root(u, static_cast<unsigned>(c.d));
      const auto out = qcomb::multicopy_controllization(v);
      residual = qcomb::max_abs_diff(out.controlled.choi.matrix,
                                     qcomb::controlled_unitary(u).choi.matrix);
    } else {
      const ComplexMatrix w = qcomb::haar_unitary(c.d, rng);
      std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
      ComplexMatrix diag = ComplexMatrix::Zero(w.rows(), w.cols());
      for (Eigen::Index i = 0; i < w.rows(); ++i) diag(i, i) = std::polar(1.0, phase(rng));
      const ComplexMatrix u = w * diag * w.adjoint();
      residual = qcomb::eigenstate_controllization(u, w.col(0)).residual;
    }
    const bool ok = residual <= *c.tolerance;
    worst = std::max(worst, residual);
    rows.push_back({{"case", s}, {"residual", residual}, {"pass", ok}});
  }
  r.pass = worst <= *c.tolerance;
  r.json = {{"rows", rows}, {"summary", {{"max_residual", worst}}}};
  return r;
}

Report scaling(const ExperimentConfig& c) {
  Report r;
  const ComplexMatrix h = hamiltonian_for(c);
  const auto set = qcomb::randomization_set(c.set);
  const auto opts = randomization_options(c);
  Json rows = Json::array();
  std::vector<double> errors;
  for (std::size_t n : c.n_list) {
    const auto res = qcomb::randomized_controllization(h, c.t, n, set, opts);
    errors.push_back(res.error);
    rows.push_back({{"n", n}, {"error", res.error}, {"phase", res.phase}});
    r.csv_rows.push_back(std::to_string(n) + "," + fmt(res.error) + "," +
                         fmt(res.phase) + "," + c.set + "," + c.mode + "," +
                         std::to_string(c.seed));
  }
  Json summary;
  const bool exact = std::all_of(errors.begin(), errors.end(),
                                 [](double e) { return e <= 1e-14; });
  if (exact) {
    summary["slope"] = nullptr;
    r.pass = true;
  } else {
    const double slope = qcomb::loglog_slope(c.n_list, errors);
    summary["slope"] = slope;
    r.pass = std::abs(slope + 1.0) <= *c.tolerance;
  }
  summary["expected_phase"] = h.trace().real() / static_cast<double>(h.rows()) * c.t;
  summary["hamiltonian"] = qcomb::to_json(h);
  r.json = {{"rows", rows}, {"summary", summary}};
  return r;
}

Report coefficients(const ExperimentConfig& c) {
  Report r;
  r.pass = true;
  const ComplexMatrix h = hamiltonian_for(c);
  const auto set = qcomb::randomization_set(c.set);
  Json rows = Json::array();
  for (std::size_t n : c.n_list) {
    const auto measured = qcomb::randomized_coefficients(h, c.t, n, set);
    const auto predicted = qcomb::predicted_coefficients(h, c.t, n, set);
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      dev = std::max(dev, std::abs(measured.c[i] - predicted.c[i]));
    const double bound = *c.tolerance / (static_cast<double>(n) * static_cast<double>(n));
    bool ok = dev <= bound;
    Json row{{"n", n},
             {"measured", measured.c},
             {"predicted", predicted.c},
             {"max_deviation", dev},
             {"bound", bound}};
    if (c.set == "clifford") {
      const double spread = std::max(std::abs(measured.c[1] - measured.c[2]),
                                     std::abs(measured.c[2] - measured.c[3]));
      row["trio_spread"] = spread;
      ok = ok && spread <= 1e-12;
    }
    row["pass"] = ok;
    r.pass = r.pass && ok;
    rows.push_back(row);
    const double phase = qcomb::randomized_controllization(h, c.t, n, set).phase;
    r.csv_rows.push_back(std::to_string(n) + "," + fmt(dev) + "," + fmt(phase) + "," +
                         c.set + "," + c.mode + "," + std::to_string(c.seed));
  }
  r.json = {{"rows", rows}, {"summary", {{"hamiltonian", qcomb::to_json(h)}}}};
  return r;
}

Report switch_compare(const ExperimentConfig& c) {
  Report r;
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < 4; ++i)
    if (c.alpha[i] != 0.0) ops.push_back(c.alpha[i] * qcomb::pauli(i));
  const qcomb::KrausSet a(ops, 2, 2);
  const double closed = qcomb::choi_max_diff(qcomb::quantum_switch_choi(a, a),
                                             qcomb::switch_action_pauli(c.alpha));
  const auto cmp = qcomb::switch_vs_controlled(c.alpha, c.restarts, c.seed);
  r.pass = closed <= *c.tolerance;
  if (c.expect_match) r.pass = r.pass && cmp.match() == *c.expect_match;
  Json row{{"alpha", c.alpha},
           {"closed_form_residual", closed},
           {"residual_single", cmp.residual_single},
           {"residual_concat", cmp.residual_concat},
           {"match_single", cmp.match_single},
           {"match_concat", cmp.match_concat},
           {"match", cmp.match()},
           {"pass", r.pass}};
  r.json = {{"rows", Json::array({row})},
            {"summary", {{"match", cmp.match()}, {"residual", cmp.residual}}}};
  return r;
}

Report comb_audit(const ExperimentConfig& c) {
  Report r;
  r.pass = true;
  const qcomb::CombShape shape = qcomb::CombShape::uniform(c.slots, c.d);
  Json rows = Json::array();
  std::size_t agree = 0;
  for (std::size_t i = 0; i < c.instances; ++i) {
    const bool circuit = i % 2 == 0;
    const std::uint64_t s = qcomb::derive_seed(c.seed, i);
    qcomb::CombKraus k;
    if (circuit) {
      k = qcomb::random_circuit_comb(c.slots, c.d, 2, s);
    } else {
      qcomb::Rng rng = qcomb::make_rng(s);
      std::vector<ComplexMatrix> ops;
      for (int j = 0; j < 3; ++j)
        ops.push_back(qcomb::ginibre(shape.out_dim(), shape.in_dim(), rng) / 3.0);
      k = qcomb::CombKraus(std::move(ops), shape);
    }
    const auto choi = qcomb::check_comb_choi(qcomb::kraus_to_comb_choi(k));
    const auto kraus = qcomb::comb_kraus_conditions(k);
    const bool same = choi.valid == kraus.valid;
    const bool ok = same && (!circuit || choi.valid);
    agree += same ? 1 : 0;
    r.pass = r.pass && ok;
    double chain = 0.0, cond = 0.0;
    for (double x : choi.chain) chain = std::max(chain, x);
    for (double x : kraus.conditions) cond = std::max(cond, x);
    rows.push_back({{"case", i},
                    {"kind", circuit ? "circuit" : "random"},
                    {"choi_valid", choi.valid},
                    {"kraus_valid", kraus.valid},
                    {"max_chain_residual", chain},
                    {"max_kraus_residual", cond},
                    {"pass", ok}});
  }
  r.json = {{"rows", rows}, {"summary", {{"agreements", agree}, {"instances", c.instances}}}};
  return r;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  static const std::set<std::string> known{
      "experiment", "d",      "t",         "n_list",    "seeds",    "seed",
      "set",        "mode",   "trials",    "method",    "alpha",    "expect_match",
      "restarts",   "slots",  "instances", "hamiltonian", "tolerance", "threads"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw UsageError("unknown config field '" + key + "'");
  ExperimentConfig c;
  if (j.contains("experiment")) c.experiment = get_as<std::string>(j, "experiment");
  if (j.contains("d")) c.d = get_as<std::size_t>(j, "d");
  if (j.contains("t")) c.t = get_as<double>(j, "t");
  if (j.contains("n_list")) c.n_list = get_as<std::vector<std::size_t>>(j, "n_list");
  if (j.contains("seeds")) c.seeds = get_as<std::size_t>(j, "seeds");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("set")) c.set = get_as<std::string>(j, "set");
  if (j.contains("mode")) c.mode = get_as<std::string>(j, "mode");
  if (j.contains("trials")) c.trials = get_as<std::size_t>(j, "trials");
  if (j.contains("method")) c.method = get_as<std::string>(j, "method");
  if (j.contains("alpha")) {
    const auto a = get_as<std::vector<double>>(j, "alpha");
    if (a.size() != 4) throw UsageError("alpha must have four entries");
    std::copy(a.begin(), a.end(), c.alpha.begin());
  }
  if (j.contains("expect_match")) c.expect_match = get_as<bool>(j, "expect_match");
  if (j.contains("restarts")) c.restarts = get_as<unsigned>(j, "restarts");
  if (j.contains("slots")) c.slots = get_as<std::size_t>(j, "slots");
  if (j.contains("instances")) c.instances = get_as<std::size_t>(j, "instances");
  if (j.contains("tolerance")) c.tolerance = get_as<double>(j, "tolerance");
  if (j.contains("threads")) c.threads = get_as<unsigned>(j, "threads");
  if (j.contains("hamiltonian")) {
    try {
      c.hamiltonian = qcomb::matrix_from_json(j.at("hamiltonian"));
    } catch (const qcomb::FormatError& e) {
      throw UsageError(std::string("hamiltonian: ") + e.what());
    }
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j{{"experiment", c.experiment}, {"d", c.d},         {"t", c.t},
         {"n_list", c.n_list},         {"seeds", c.seeds}, {"seed", c.seed},
         {"set", c.set},               {"mode", c.mode},   {"trials", c.trials},
         {"method", c.method},         {"alpha", c.alpha}, {"restarts", c.restarts},
         {"slots", c.slots},           {"instances", c.instances}};
  if (c.expect_match) j["expect_match"] = *c.expect_match;
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  if (c.hamiltonian) j["hamiltonian"] = qcomb::to_json(*c.hamiltonian);
  return j;
}

void finalize(ExperimentConfig& c) {
  if (c.experiment.empty()) throw UsageError("no experiment given");
  if (!kExperiments.count(c.experiment))
    throw UsageError("unknown experiment '" + c.experiment + "'");
  if (c.set != "pauli" && c.set != "clifford")
    throw UsageError("set must be pauli or clifford");
  if (c.mode != "average" && c.mode != "sampled")
    throw UsageError("mode must be average or sampled");
  if (c.d < 2 || c.d > 4) throw UsageError("d must be between 2 and 4");
  if (c.threads == 0) c.threads = 1;
  if (c.trials == 0) throw UsageError("trials must be positive");
  for (std::size_t n : c.n_list)
    if (n == 0) throw UsageError("n_list entries must be positive");

  const std::string& e = c.experiment;
  if (e == "exact-controllization") {
    if (c.method != "multicopy" && c.method != "eigenstate")
      throw UsageError("method must be multicopy or eigenstate");
    if (c.method == "multicopy" && c.d > 3)
      throw UsageError("multicopy controllization is limited to d <= 3");
    if (!c.tolerance) c.tolerance = 1e-10;
  } else if (e == "scaling" || e == "coefficients") {
    if (c.hamiltonian) {
      if (c.hamiltonian->rows() != 2 || c.hamiltonian->cols() != 2)
        throw UsageError("hamiltonian must be 2x2 for the qubit randomization sets");
      if (qcomb::hermiticity_residual(*c.hamiltonian) > qcomb::tol::kHermiticity)
        throw UsageError("hamiltonian is not Hermitian");
    }
    if (c.n_list.empty())
      c.n_list = e == "scaling" ? std::vector<std::size_t>{4, 8, 16, 32, 64, 128, 256}
                                : std::vector<std::size_t>{100};
    if (*std::max_element(c.n_list.begin(), c.n_list.end()) > 100000)
      throw UsageError("n_list entries must not exceed 100000");
    if (e == "scaling" && c.n_list.size() < 2)
      throw UsageError("scaling needs at least two n values");
    if (!c.tolerance) c.tolerance = e == "scaling" ? 0.15 : 5.0;
  } else if (e == "switch-compare") {
    double s = 0.0;
    for (double a : c.alpha) {
      if (a < 0.0) throw UsageError("alpha entries must be non-negative");
      s += a * a;
    }
    if (std::abs(s - 1.0) > 1e-6) throw UsageError("alpha must satisfy sum alpha^2 = 1");
    for (double& a : c.alpha) a /= std::sqrt(s);
    if (!c.tolerance) c.tolerance = 1e-10;
  } else if (e == "comb-audit") {
    if (c.slots < 1 || c.slots > 3) throw UsageError("slots must be 1, 2 or 3");
    std::size_t side = 1;
    for (std::size_t i = 0; i < 2 * c.slots + 2; ++i) side *= c.d;
    if (side > qcomb::tol::kMaxDenseSide)
      throw UsageError("comb-audit shape exceeds the dense budget");
  }
}

Report run(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  finalize(c);
  Report r;
  if (c.experiment == "exact-controllization") r = exact_controllization(c);
  else if (c.experiment == "scaling") r = scaling(c);
  else if (c.experiment == "coefficients") r = coefficients(c);
  else if (c.experiment == "switch-compare") r = switch_compare(c);
  else r = comb_audit(c);
  Json out{{"experiment", c.experiment},
           {"config", config_to_json(c)},
           {"library_version", qcomb::kVersion}};
  if (!r.csv_rows.empty()) out["csv_header"] = kCsvHeader;
  out["rows"] = r.json.at("rows");
  out["summary"] = r.json.at("summary");
  out["pass"] = r.pass;
  r.json = std::move(out);
  return r;
}

ValidateResult validate_file(const std::string& path) {
  const Json j = qcomb::read_json_file(path);
  ValidateResult v;
  if (qcomb::is_comb_json(j)) {
    const auto data = qcomb::comb_from_json(j);
    Json out{{"type", "comb"}, {"dims", data.shape.dims()}};
    bool ok = true;
    std::optional<qcomb::CombChoi> choi = data.choi;
    if (data.kraus) {
      const auto kr = qcomb::comb_kraus_conditions(*data.kraus);
      out["representation"] = "kraus";
      out["kraus_conditions"] = kr.conditions;
      out["kraus_normalization"] = kr.normalization;
      out["kraus_valid"] = kr.valid;
      ok = kr.valid;
      if (data.shape.total() <= qcomb::tol::kMaxDenseSide)
        choi = qcomb::kraus_to_comb_choi(*data.kraus);
    } else {
      out["representation"] = "choi";
    }
    if (choi) {
      const auto rep = qcomb::check_comb_choi(*choi);
      out["cp"] = rep.cp;
      out["min_eigenvalue"] = rep.min_eigenvalue;
      out["chain"] = rep.chain;
      out["normalization"] = rep.normalization;
      out["choi_valid"] = rep.valid;
      ok = ok && rep.valid;
    }
    out["pass"] = ok;
    v.json = out;
    v.pass = ok;
  } else {
    const auto data = qcomb::channel_from_json(j);
    const auto rep = qcomb::validate_channel(data.choi);
    v.pass = rep.cp && rep.tp;
    v.json = {{"type", "channel"},
              {"d_in", data.choi.d_in},
              {"d_out", data.choi.d_out},
              {"cp", rep.cp},
              {"tp", rep.tp},
              {"min_eigenvalue", rep.min_eigenvalue},
              {"tp_residual", rep.tp_residual},
              {"hermiticity_residual", rep.hermiticity_residual},
              {"pass", v.pass}};
  }
  return v;
}

Json emit_fixture(const std::string& kind, const FixtureParams& p) {
  if (std::find(kFixtureKinds.begin(), kFixtureKinds.end(), kind) == kFixtureKinds.end())
    throw UsageError("unknown fixture kind '" + kind + "'");
  if (p.d < 2 || p.d > 4) throw qcomb::BudgetError("fixture d must be between 2 and 4");
  qcomb::Rng rng = qcomb::make_rng(p.seed);
  if (kind == "haar-unitary")
    return qcomb::to_json(qcomb::KrausSet({qcomb::haar_unitary(p.d, rng)}, p.d, p.d));
  if (kind == "random-cptp") {
    if (p.kraus < 1 || p.kraus > p.d * p.d)
      throw UsageError("kraus count must be between 1 and d^2");
    return qcomb::to_json(
        qcomb::KrausSet(qcomb::random_kraus(p.d, p.d, p.kraus, rng), p.d, p.d));
  }
  if (kind == "antisym-state")
    return {{"d", p.d}, {"state", qcomb::to_json(qcomb::antisym_state(p.d))}};
  if (kind == "pauli-set" || kind == "clifford-set") {
    if (p.d != 2) throw UsageError("randomization sets are defined for d = 2");
    const auto set = kind == "pauli-set" ? qcomb::pauli_set() : qcomb::clifford_set();
    if (!qcomb::normalizes_paulis(set))
      throw qcomb::Error(set.name + " set does not normalize the Pauli group");
    Json us = Json::array();
    for (const auto& u : set.unitaries) us.push_back(qcomb::to_json(u));
    return {{"name", set.name}, {"unitaries", us}};
  }

  if (p.slots < 1 || p.slots > 3) throw UsageError("slots must be 1, 2 or 3");
  const qcomb::CombShape shape = qcomb::CombShape::uniform(p.slots, p.d);
  const bool dense = shape.total() <= qcomb::tol::kMaxDenseSide;
  if (kind == "identity-comb")
    return dense ? qcomb::to_json(qcomb::identity_comb(shape))
                 : qcomb::to_json(qcomb::identity_comb_kraus(shape));

  std::size_t odd = 1;
  for (std::size_t k = 0; k < p.slots; ++k) odd *= p.d;
  ComplexMatrix rho;
  if (p.state == "mixed") {
    rho = qcomb::identity(odd) / static_cast<double>(odd);
  } else if (p.state == "antisym") {
    if (p.slots != p.d) throw UsageError("antisym state needs slots == d");
    const auto a = qcomb::antisym_state(p.d);
    rho = a * a.adjoint();
  } else {
    throw UsageError("state must be mixed or antisym");
  }
  return dense ? qcomb::to_json(qcomb::prepare_traceout_comb(rho, shape))
               : qcomb::to_json(qcomb::prepare_traceout_kraus(rho, shape));
}

}  // namespace combctl
