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

#include "qcomb/randomization.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "qcomb/errors.hpp"
#include "qcomb/random.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

void check_hamiltonian(const ComplexMatrix& h, const RandomizationSet& set) {
  if (h.rows() != h.cols()) throw DimensionError("Hamiltonian must be square");
  if (hermiticity_residual(h) > tol::kHermiticity)
    throw NotHermitianError("Hamiltonian is not Hermitian");
  if (set.size() == 0) throw PreconditionError("empty randomization set");
  if (static_cast<std::size_t>(h.rows()) != set.dim()) {
    std::ostringstream os;
    os << "Hamiltonian has dimension " << h.rows() << " but the set '" << set.name
       << "' acts on dimension " << set.dim();
    throw DimensionError(os.str());
  }
}

ChoiMatrix power(const ChoiMatrix& step, std::size_t n) {
  ChoiMatrix acc = step;
  for (std::size_t i = 1; i < n; ++i) acc = compose(acc, step);
  return acc;
}

double normalized_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  return choi_trace_distance(a, b) / static_cast<double>(a.d_in);
}

ChoiMatrix sampled_controlled(const ComplexMatrix& u, std::size_t n,
                              const RandomizationSet& set,
                              const RandomizationOptions& opts) {
  const std::size_t d = set.dim();
  const std::size_t r = set.size();
  ComplexMatrix un = identity(d);
  for (std::size_t k = 0; k < n; ++k) un = u * un;
  std::vector<ComplexMatrix> conj;
  for (const auto& v : set.unitaries) conj.push_back(v.adjoint() * u * v);

  constexpr std::size_t kChunk = 256;
  const std::size_t trials = std::max<std::size_t>(opts.trials, 1);
  const std::size_t chunks = (trials + kChunk - 1) / kChunk;
  const auto side = ix(4 * d * d);
  std::vector<ComplexMatrix> partial(chunks, ComplexMatrix::Zero(side, side));

  const ComplexMatrix p0 = basis_vector(2, 0) * basis_vector(2, 0).adjoint();
  const ComplexMatrix p1 = basis_vector(2, 1) * basis_vector(2, 1).adjoint();
  const ComplexMatrix one_branch = kron(p1, un);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(trials, lo + kChunk);
    ComplexMatrix& acc = partial[c];
    for (std::size_t trial = lo; trial < hi; ++trial) {
      Rng rng = make_rng(opts.seed, trial);
      std::uniform_int_distribution<std::size_t> pick(0, r - 1);
      ComplexMatrix b0 = identity(d);
      for (std::size_t k = 0; k < n; ++k) b0 = conj[pick(rng)] * b0;
      const ComplexVector w = vectorize(kron(p0, b0) + one_branch);
      acc.noalias() += w * w.adjoint();
    }
  };

  unsigned threads = opts.threads == 0 ? std::thread::hardware_concurrency()
                                       : opts.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }
  ComplexMatrix sum = ComplexMatrix::Zero(side, side);
  for (const auto& p : partial) sum += p;
  return ChoiMatrix(sum / static_cast<double>(trials), 2 * d, 2 * d);
}

}  // namespace

std::size_t RandomizationSet::dim() const {
  return unitaries.empty() ? 0 : static_cast<std::size_t>(unitaries.front().rows());
}

RandomizationSet pauli_set() {
  return {"pauli", {pauli(0), pauli(1), pauli(2), pauli(3)}};
}

std::vector<ComplexMatrix> clifford_representatives() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  const Complex ep = std::polar(1.0, std::numbers::pi / 4);
  const Complex em = std::polar(1.0, -std::numbers::pi / 4);
  return {identity(2),
          mat2(1.0, 0.0, 0.0, i),
          s * mat2(ep, em, em, ep),
          s * mat2(1.0, 1.0, 1.0, -1.0),
          s * mat2(1.0, i, 1.0, -i),
          s * mat2(1.0, 1.0, i, -i)};
}

RandomizationSet clifford_set() {
  RandomizationSet set{"clifford", {}};
  for (const auto& v : clifford_representatives())
    for (std::size_t k = 0; k < 4; ++k) set.unitaries.push_back(v * pauli(k));
  return set;
}

RandomizationSet generalized_pauli_set(std::size_t d) {
  if (d < 2) throw PreconditionError("generalized_pauli_set: d must be >= 2");
  ComplexMatrix x = ComplexMatrix::Zero(ix(d), ix(d));
  ComplexMatrix z = ComplexMatrix::Zero(ix(d), ix(d));
  for (std::size_t j = 0; j < d; ++j) {
    x(ix((j + 1) % d), ix(j)) = 1.0;
    z(ix(j), ix(j)) = std::polar(1.0, 2.0 * std::numbers::pi * double(j) / double(d));
  }
  RandomizationSet set{"generalized-pauli", {}};
  ComplexMatrix xa = identity(d);
  for (std::size_t a = 0; a < d; ++a) {
    ComplexMatrix zb = identity(d);
    for (std::size_t b = 0; b < d; ++b) {
      set.unitaries.push_back(xa * zb);
      zb = z * zb;
    }
    xa = x * xa;
  }
  return set;
}

RandomizationSet randomization_set(const std::string& name) {
  if (name == "pauli") return pauli_set();
  if (name == "clifford") return clifford_set();
  throw PreconditionError("unknown randomization set '" + name +
                          "' (expected pauli or clifford)");
}

bool normalizes_paulis(const RandomizationSet& set) {
  if (set.dim() != 2) return false;
  for (const auto& c : set.unitaries) {
    if (!is_unitary(c, tol::kUnitarity)) return false;
    for (std::size_t a = 1; a < 4; ++a) {
      const ComplexMatrix img = c * pauli(a) * c.adjoint();
      bool found = false;
      for (std::size_t b = 1; b < 4 && !found; ++b) {
        const Complex ov = (pauli(b) * img).trace() / 2.0;
        found = std::abs(std::abs(ov) - 1.0) < 1e-10;
      }
      if (!found) return false;
    }
  }
  return true;
}

CombKraus randomization_comb(const RandomizationSet& set) {
  const std::size_t d = set.dim();
  const double w = 1.0 / std::sqrt(static_cast<double>(set.size()));
  const CombShape shape = CombShape::uniform(1, d);
  std::vector<ComplexMatrix> ops;
  for (const auto& u : set.unitaries)
    ops.push_back(
        comb_operator(w * kron_vec(vectorize(u), vectorize(u.adjoint())), shape));
  return CombKraus(std::move(ops), shape);
}

ChoiMatrix randomization_step_choi(const ComplexMatrix& u,
                                   const RandomizationSet& set, bool controlled) {
  const std::size_t d = set.dim();
  if (static_cast<std::size_t>(u.rows()) != d || u.rows() != u.cols())
    throw DimensionError("randomization_step_choi: u does not match the set");
  const double w = 1.0 / std::sqrt(static_cast<double>(set.size()));
  std::vector<ComplexMatrix> ops;
  const ComplexMatrix p0 = basis_vector(2, 0) * basis_vector(2, 0).adjoint();
  const ComplexMatrix p1 = basis_vector(2, 1) * basis_vector(2, 1).adjoint();
  for (const auto& v : set.unitaries) {
    const ComplexMatrix twirled = v.adjoint() * u * v;
    ops.push_back(controlled ? ComplexMatrix(w * (kron(p0, twirled) + kron(p1, u)))
                             : ComplexMatrix(w * twirled));
  }
  const std::size_t dim = controlled ? 2 * d : d;
  return kraus_to_choi(KrausSet(std::move(ops), dim, dim));
}

ChoiMatrix ideal_controlled_evolution(const ComplexMatrix& h, double t) {
  const double d = static_cast<double>(h.rows());
  const double theta = h.trace().real() * t / d;
  return controlled_unitary(expm_generator(h, t), theta).choi;
}

ControllizationResult randomized_controllization(const ComplexMatrix& h, double t,
                                                 std::size_t n,
                                                 const RandomizationSet& set,
                                                 const RandomizationOptions& opts) {
  check_hamiltonian(h, set);
  if (n == 0) throw PreconditionError("randomized_controllization: n must be >= 1");
  const ComplexMatrix u = expm_generator(h, t / static_cast<double>(n));
  ChoiMatrix choi = opts.mode == RandomizationMode::average
                        ? power(randomization_step_choi(u, set, true), n)
                        : sampled_controlled(u, n, set, opts);
  const ChoiMatrix ideal = ideal_controlled_evolution(h, t);
  const double err = normalized_distance(choi, ideal);
  const ComplexMatrix k = extract_coherence_operator(choi);
  const double phase = std::arg((expm_generator(h, t).adjoint() * k).trace());
  return {std::move(choi), err, phase};
}

ChoiMatrix randomized_channel(const ComplexMatrix& h, double t, std::size_t n,
                              const RandomizationSet& set) {
  check_hamiltonian(h, set);
  if (n == 0) throw PreconditionError("randomized_channel: n must be >= 1");
  const ComplexMatrix u = expm_generator(h, t / static_cast<double>(n));
  return power(randomization_step_choi(u, set, false), n);
}

CoefficientRecord randomized_coefficients(const ComplexMatrix& h, double t,
                                          std::size_t n, const RandomizationSet& set) {
  if (set.dim() != 2)
    throw DimensionError("randomized_coefficients: qubit sets only");
  const PauliCoefficients pc = pauli_decompose(randomized_channel(h, t, n, set));
  CoefficientRecord r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = pc.c[i][i].real();
  r.order = CoefficientRecord::Order::exact;
  return r;
}

CoefficientRecord predicted_coefficients(const ComplexMatrix& h, double t,
                                         std::size_t n, const RandomizationSet& set,
                                         CoefficientRecord::Order order) {
  if (h.rows() != 2 || set.dim() != 2)
    throw DimensionError("predicted_coefficients: qubit Hamiltonians only");
  if (set.name != "pauli" && set.name != "clifford")
    throw PreconditionError("predicted_coefficients: closed forms exist for the "
                            "pauli and clifford sets only");
  if (order == CoefficientRecord::Order::exact)
    throw PreconditionError("predicted_coefficients: closed forms are expansions");
  const double d = 2.0;
  const double nn = static_cast<double>(n);
  const double tr = h.trace().real();
  const double tr2 = (h * h).trace().real();
  std::array<double, 3> s{};
  double sum2 = 0.0, sum4 = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    s[i] = (h * pauli(i + 1)).trace().real();
    sum2 += s[i] * s[i];
    sum4 += std::pow(s[i], 4);
  }
  const bool clifford = set.name == "clifford";
  const double g = tr * tr - d * tr2;
  const double t2 = t * t / (d * d);
  const double t4 = t2 * t2;

  CoefficientRecord r;
  r.order = order;
  r.c[0] = 1.0 + g * t2 / nn;
  if (order == CoefficientRecord::Order::second) {
    const double quartic = clifford ? sum2 * sum2 / 3.0 : sum4;
    r.c[0] += (g * g + quartic) * t4 / (2.0 * nn * nn);
  }
  for (std::size_t i = 0; i < 3; ++i)
    r.c[i + 1] = (clifford ? sum2 / 3.0 : s[i] * s[i]) * t2 / nn;
  return r;
}

ComplexMatrix pauli_s0() {
  ComplexVector v = ComplexVector::Zero(16);
  for (std::size_t i = 0; i < 4; ++i)
    v += kron_vec(vectorize(pauli(i)), vectorize(pauli(i)));
  return comb_operator(v / 4.0, CombShape::uniform(1, 2));
}

PauliCliffordReport pauli_vs_clifford(const ComplexMatrix& h, double t,
                                      const std::vector<std::size_t>& n_list) {
  const RandomizationSet ps = pauli_set();
  const RandomizationSet cs = clifford_set();
  PauliCliffordReport rep;
  rep.clifford_not_better = true;
  const ChoiMatrix id = identity_choi(2);
  for (std::size_t n : n_list) {
    PauliCliffordRow row;
    row.n = n;
    row.c0_pauli = randomized_coefficients(h, t, n, ps).c[0];
    row.c0_clifford = randomized_coefficients(h, t, n, cs).c[0];
    row.neutralization_error_pauli =
        normalized_distance(randomized_channel(h, t, n, ps), id);
    row.neutralization_error_clifford =
        normalized_distance(randomized_channel(h, t, n, cs), id);
    row.controlled_error_pauli = randomized_controllization(h, t, n, ps).error;
    row.controlled_error_clifford = randomized_controllization(h, t, n, cs).error;
    if (row.c0_clifford > row.c0_pauli + 1e-12) rep.clifford_not_better = false;
    rep.rows.push_back(row);
  }
  const CombShape shape = CombShape::uniform(1, 2);
  MostCoherentSOptions opts;
  opts.anchor = identity_anchor(shape);
  rep.s0_pauli = most_coherent_S(randomization_comb(ps), opts).s;
  rep.s0_clifford = most_coherent_S(randomization_comb(cs), opts).s;
  rep.s0_difference = max_abs_diff(rep.s0_pauli, rep.s0_clifford);
  return rep;
}

double loglog_slope(const std::vector<std::size_t>& ns,
                    const std::vector<double>& errors) {
  if (ns.size() != errors.size() || ns.size() < 2)
    throw PreconditionError("loglog_slope: need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0 || !(errors[i] > 0.0))
      throw PreconditionError("loglog_slope: values must be positive");
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ComplexMatrix random_bounded_hamiltonian(std::size_t d, Rng& rng) {
  ComplexMatrix h = random_hermitian(d, rng);
  std::uniform_real_distribution<double> scale(0.3, 1.0);
  return h * (scale(rng) / schatten_norm(h, kInfinity));
}

}  // namespace qcomb
