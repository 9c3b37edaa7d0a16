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

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is the number of failures (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qcomb/channel.hpp"
#include "qcomb/comb.hpp"
#include "qcomb/controlled.hpp"
#include "qcomb/controllization.hpp"
#include "qcomb/random.hpp"
#include "qcomb/randomization.hpp"

using namespace qcomb;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Outcome coherence_law() {
  Rng rng = make_rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = i < 25 ? 2 : 3;
    const std::size_t nk = 1 + static_cast<std::size_t>(i % 4);
    const ChoiMatrix a = kraus_to_choi(KrausSet(random_kraus(d, d, nk, rng)));
    const KrausSet orth = choi_to_orthogonal_kraus(a);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    const ComplexVector beta = random_unit_vector(orth.size(), rng) * radius(rng);
    ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < orth.size(); ++j)
      k += beta(static_cast<Eigen::Index>(j)) * orth.operators[j];
    const ControlledChannel cc = controlled_with_K(a, k);
    for (double p : {1.0, 2.0})
      worst = std::max(worst,
                       std::abs(coherence_norm(cc, p) - predicted_coherence_norm(cc, p)));
  }
  return {worst <= 1e-9, fmt("max deviation %.2e", worst)};
}

Outcome depolarizing_bound() {
  const double v = most_coherent_K(depolarizing_choi()).hs_norm_sq();
  return {std::abs(v - 0.5) <= 1e-10, fmt("max Tr K^dag K = %.12f", v)};
}

Outcome switch_equivalence() {
  const KrausSet dep = choi_to_orthogonal_kraus(depolarizing_choi());
  const ChoiMatrix sw = quantum_switch_choi(dep, dep);
  const ComplexMatrix half = identity(2) / 2.0;
  const double diff =
      choi_max_diff(sw, controlled_two(depolarizing_choi(), half, depolarizing_choi(), half).choi);
  const auto cmp = switch_vs_controlled({std::sqrt(0.7), std::sqrt(0.3), 0.0, 0.0});
  return {diff <= 1e-12 && cmp.residual > 1e-3,
          fmt("depolarizing diff %.2e, biased-coin residual %.3f", diff, cmp.residual)};
}

Outcome comb_cross_check() {
  Rng rng = make_rng(1004);
  int agree = 0, total = 0, valid_ok = 0;
  for (std::size_t n : {1u, 2u}) {
    const CombShape shape = CombShape::uniform(n, 2);
    for (int i = 0; i < 50; ++i) {
      CombKraus c;
      const bool circuit = i % 2 == 0;
      if (circuit) {
        c = random_circuit_comb(n, 2, 2, derive_seed(1004, static_cast<std::uint64_t>(100 * n + i)));
      } else {
        std::vector<ComplexMatrix> ops;
        for (int j = 0; j < 3; ++j)
          ops.push_back(ginibre(shape.out_dim(), shape.in_dim(), rng) / 3.0);
        c = CombKraus(std::move(ops), shape);
      }
      const bool choi = check_comb_choi(kraus_to_comb_choi(c)).valid;
      const bool kraus = comb_kraus_conditions(c).valid;
      agree += choi == kraus ? 1 : 0;
      valid_ok += choi == circuit ? 1 : 0;
      ++total;
    }
  }
  return {agree == total && valid_ok == total,
          fmt("%.0f/%.0f verdicts agree", agree, total) +
              fmt(", %.0f/%.0f as constructed", valid_ok, total)};
}

Outcome neutralization() {
  Rng rng = make_rng(1005);
  const CombShape shape = CombShape::uniform(1, 2);
  const CombChoi comb = prepare_traceout_comb(random_density(2, rng), shape);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ChoiMatrix a =
        kraus_to_choi(KrausSet(random_kraus(2, 2, 1 + static_cast<std::size_t>(i % 4), rng)));
    worst = std::max(worst, choi_max_diff(link_apply(comb, {a}), identity_choi(2)));
  }
  return {worst <= 1e-10, fmt("max deviation %.2e", worst)};
}

Outcome eigenstate() {
  Rng rng = make_rng(1006);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    const ComplexMatrix w = haar_unitary(d, rng);
    std::uniform_real_distribution<double> phase(-3.1, 3.1);
    ComplexMatrix diag = ComplexMatrix::Zero(w.rows(), w.cols());
    for (Eigen::Index j = 0; j < w.rows(); ++j) diag(j, j) = std::polar(1.0, phase(rng));
    const ComplexMatrix u = w * diag * w.adjoint();
    const EigenstateResult r = eigenstate_controllization(u, w.col(0));
    worst = std::max(worst, r.residual);
  }
  return {worst <= 1e-10, fmt("max residual %.2e", worst)};
}

Outcome multicopy() {
  Rng rng = make_rng(1007);
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix u = haar_special_unitary(d, rng);
      const ComplexMatrix v = special_unitary_root(u, static_cast<unsigned>(d));
      const MulticopyResult r = multicopy_controllization(v);
      worst = std::max(worst, choi_max_diff(r.controlled.choi, controlled_unitary(u).choi));
    }
  }
  return {worst <= 1e-10, fmt("max deviation from controlled-U %.2e", worst)};
}

Outcome antisym_covariance() {
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const ComplexVector a = antisym_state(d);
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng = make_rng(1008, s);
      const ComplexMatrix u = haar_unitary(d, rng);
      ComplexMatrix un = ComplexMatrix::Ones(1, 1);
      for (std::size_t i = 0; i < d; ++i) un = kron(un, u);
      worst = std::max(worst, max_abs_diff(un * a, u.determinant() * a));
    }
  }
  return {worst <= 1e-12, fmt("max deviation %.2e", worst)};
}

Outcome scaling() {
  const std::vector<std::size_t> ns{4, 8, 16, 32, 64, 128, 256};
  double worst = 0.0, lo = 1e300, hi = -1e300;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng = make_rng(1009, s);
    const ComplexMatrix h = random_bounded_hamiltonian(2, rng);
    std::vector<double> errs;
    for (std::size_t n : ns)
      errs.push_back(randomized_controllization(h, 1.0, n, pauli_set()).error);
    const double slope = loglog_slope(ns, errs);
    worst = std::max(worst, std::abs(slope + 1.0));
    lo = std::min(lo, slope);
    hi = std::max(hi, slope);
  }
  return {worst <= 0.15, fmt("slopes in [%.3f, %.3f]", lo, hi)};
}

Outcome coefficients() {
  const std::size_t n = 100;
  const double bound = 5.0 / static_cast<double>(n * n);
  double dev = 0.0, spread = 0.0, trio = 0.0;
  std::vector<ComplexMatrix> hs{pauli(3)};
  for (std::uint64_t s = 0; s < 4; ++s) {
    Rng rng = make_rng(1010, s);
    hs.push_back(random_bounded_hamiltonian(2, rng));
  }
  for (const auto& h : hs) {
    const auto mp = randomized_coefficients(h, 1.0, n, pauli_set());
    const auto pp = predicted_coefficients(h, 1.0, n, pauli_set());
    const auto mc = randomized_coefficients(h, 1.0, n, clifford_set());
    const auto pc = predicted_coefficients(h, 1.0, n, clifford_set());
    for (std::size_t i = 0; i < 4; ++i) {
      dev = std::max(dev, std::abs(mp.c[i] - pp.c[i]));
      dev = std::max(dev, std::abs(mc.c[i] - pc.c[i]));
    }
    spread = std::max({spread, std::abs(mc.c[1] - mc.c[2]), std::abs(mc.c[2] - mc.c[3])});
    const double mean = (mp.c[1] + mp.c[2] + mp.c[3]) / 3.0;
    trio = std::max(trio, std::abs(mc.c[1] - mean));
  }
  return {dev <= bound && spread <= 1e-12 && trio <= bound,
          fmt("max deviation %.2e, Clifford trio spread %.1e", dev, spread) +
              fmt(", trio vs Pauli mean %.2e", trio)};
}

Outcome phase_law() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng = make_rng(1011, s);
    std::uniform_real_distribution<double> shift(0.2, 0.6);
    const ComplexMatrix h = random_bounded_hamiltonian(2, rng) + shift(rng) * identity(2);
    const double expected = h.trace().real() / 2.0;
    const auto r = randomized_controllization(h, 1.0, 1024, pauli_set());
    worst = std::max(worst, std::abs(std::remainder(r.phase - expected, 2 * std::numbers::pi)));
  }
  return {worst <= 1e-5, fmt("max phase deviation %.2e", worst)};
}

Outcome pauli_clifford() {
  bool ordered = true;
  double s0 = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng = make_rng(1012, s);
    const auto rep = pauli_vs_clifford(random_bounded_hamiltonian(2, rng), 1.0, {32});
    for (const auto& row : rep.rows) ordered = ordered && row.c0_clifford <= row.c0_pauli;
    s0 = std::max({s0, rep.s0_difference, max_abs_diff(rep.s0_pauli, pauli_s0())});
  }
  return {ordered && s0 <= 1e-10,
          std::string(ordered ? "c0 Clifford <= c0 Pauli for all" : "ordering violated") +
              fmt(", S0 difference %.2e", s0)};
}

Outcome non_concatenable() {
  const double gap = identity_depolarizing_gap();
  return {gap > 0.4, fmt("min residual %.4f", gap)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"coherence eigenvalue law", 5, coherence_law},
      {"depolarizing coherence bound", 0, depolarizing_bound},
      {"switch equivalence", 10, switch_equivalence},
      {"comb condition cross-check", 60, comb_cross_check},
      {"neutralization", 0, neutralization},
      {"eigenstate controllization", 0, eigenstate},
      {"exact multicopy controllization", 30, multicopy},
      {"antisymmetric covariance", 0, antisym_covariance},
      {"randomization scaling", 60, scaling},
      {"coefficient formulas", 0, coefficients},
      {"phase law", 0, phase_law},
      {"Pauli vs Clifford", 0, pauli_clifford},
      {"identity-depolarizing non-concatenability", 0, non_concatenable},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && dt > c.time_limit_s) {
      o.pass = false;
      o.detail += fmt(", over the %.0f s limit", c.time_limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
