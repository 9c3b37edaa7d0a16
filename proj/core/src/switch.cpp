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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "qcomb/controlled.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/random.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

void check_alpha(const std::array<double, 4>& alpha) {
  double s = 0.0;
  for (double a : alpha) {
    if (a < 0.0) throw PreconditionError("alpha entries must be non-negative");
    s += a * a;
  }
  if (std::abs(s - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "alpha must satisfy sum alpha^2 = 1 (got " << s << ")";
    throw PreconditionError(os.str());
  }
}

ComplexMatrix with_blocks(const ComplexMatrix& ja, const ComplexMatrix& jb,
                          const ComplexMatrix& off, std::size_t d) {
  const auto n = static_cast<Idx>(d * d);
  ComplexMatrix m = ComplexMatrix::Zero(4 * n, 4 * n);
  m.block(0, 0, n, n) = ja;
  m.block(3 * n, 3 * n, n, n) = jb;
  m.block(0, 3 * n, n, n) = off;
  m.block(3 * n, 0, n, n) = off.adjoint();
  return permute_subsystems(m, SubsystemShape{2, 2, d, d}, {0, 2, 1, 3});
}

// argmin q^T|x|^2 - 2 Re(c^dag x) subject to ||x|| <= 1, q >= 0 diagonal.
ComplexVector trust_region(const RealVector& q, const ComplexVector& c) {
  const Idx n = c.size();
  auto solve = [&](double mu) {
    ComplexVector x(n);
    for (Idx i = 0; i < n; ++i) {
      const double den = q(i) + mu;
      x(i) = den > 0.0 ? c(i) / den : Complex(0.0);
    }
    return x;
  };
  bool unconstrained_ok = true;
  for (Idx i = 0; i < n; ++i)
    if (q(i) <= 1e-300 && std::abs(c(i)) > 0.0) unconstrained_ok = false;
  if (unconstrained_ok) {
    ComplexVector x = solve(0.0);
    if (x.norm() <= 1.0) return x;
  }
  const double cn = c.norm();
  if (cn == 0.0) return ComplexVector::Zero(n);
  double lo = 0.0, hi = cn;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (solve(mid).norm() > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  ComplexVector x = solve(hi);
  const double xn = x.norm();
  if (xn > 1.0) x /= xn;
  return x;
}

ComplexMatrix pauli_coords(const ComplexMatrix& b) {
  // Coordinates in the orthonormal basis |sigma_i>>/sqrt(2).
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      m(static_cast<Idx>(i), static_cast<Idx>(j)) =
          vectorize(pauli(i)).dot(b * vectorize(pauli(j))) / 2.0;
  return m;
}

}  // namespace

ChoiMatrix quantum_switch_choi(const KrausSet& a, const KrausSet& b) {
  if (a.d_in != a.d_out || b.d_in != b.d_out || a.d_in != b.d_in)
    throw DimensionError("quantum_switch_choi: channels must share dimension");
  const std::size_t d = a.d_in;
  const ComplexMatrix p0 = basis_vector(2, 0) * basis_vector(2, 0).adjoint();
  const ComplexMatrix p1 = basis_vector(2, 1) * basis_vector(2, 1).adjoint();
  std::vector<ComplexMatrix> w;
  for (const auto& k : a.operators)
    for (const auto& l : b.operators) w.push_back(kron(p0, l * k) + kron(p1, k * l));
  return kraus_to_choi(KrausSet(std::move(w), 2 * d, 2 * d));
}

std::array<double, 4> concatenated_alpha(const std::array<double, 4>& a) {
  double s4 = 0.0;
  for (double x : a) s4 += x * x * x * x;
  auto sq = [](double x) { return x * x; };
  return {std::sqrt(s4),
          std::sqrt(2 * sq(a[0] * a[1]) + 2 * sq(a[2] * a[3])),
          std::sqrt(2 * sq(a[0] * a[2]) + 2 * sq(a[1] * a[3])),
          std::sqrt(2 * sq(a[0] * a[3]) + 2 * sq(a[1] * a[2]))};
}

ChoiMatrix switch_action_pauli(const std::array<double, 4>& alpha) {
  check_alpha(alpha);
  const auto& a = alpha;
  auto sq = [](double x) { return x * x; };
  double s4 = 0.0;
  for (double x : a) s4 += x * x * x * x;
  const std::array<double, 4> coef{
      s4, 2 * (sq(a[0] * a[1]) - sq(a[2] * a[3])),
      2 * (sq(a[0] * a[2]) - sq(a[1] * a[3])),
      2 * (sq(a[0] * a[3]) - sq(a[1] * a[2]))};
  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexVector v = vectorize(pauli(i));
    b += coef[i] * v * v.adjoint();
  }
  const auto ap = concatenated_alpha(alpha);
  const ComplexMatrix jaa =
      pauli_channel_choi({ap[0] * ap[0], ap[1] * ap[1], ap[2] * ap[2], ap[3] * ap[3]})
          .matrix;
  return ChoiMatrix(with_blocks(jaa, jaa, b, 2), 4, 4);
}

ComplexMatrix switch_offdiag_bruteforce(const std::array<double, 4>& alpha) {
  check_alpha(alpha);
  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double w = alpha[i] * alpha[i] * alpha[j] * alpha[j];
      if (w == 0.0) continue;
      b += w * vectorize(pauli(i) * pauli(j)) *
           vectorize(pauli(j) * pauli(i)).adjoint();
    }
  return b;
}

BilinearFit fit_rank_one_bounded(const ComplexMatrix& m, const RealVector& w,
                                 unsigned restarts, std::uint64_t seed) {
  const Idx n = w.size();
  if (m.rows() != n || m.cols() != n)
    throw DimensionError("fit_rank_one_bounded: size mismatch");
  const RealVector w2 = w.cwiseAbs2();
  auto residual = [&](const ComplexVector& b, const ComplexVector& g) {
    return (m - w.asDiagonal() * b * g.adjoint() * w.asDiagonal()).norm();
  };
  auto descend = [&](ComplexVector b, ComplexVector g) {
    double prev = residual(b, g);
    for (int it = 0; it < 2000; ++it) {
      const ComplexVector wg = w.cwiseProduct(g);
      b = trust_region(w2 * wg.squaredNorm(),
                       w.cast<Complex>().cwiseProduct(m * wg));
      const ComplexVector wb = w.cwiseProduct(b);
      g = trust_region(w2 * wb.squaredNorm(),
                       w.cast<Complex>().cwiseProduct(m.adjoint() * wb));
      const double cur = residual(b, g);
      if (prev - cur < 1e-15) {
        prev = cur;
        break;
      }
      prev = cur;
    }
    return BilinearFit{prev, b, g};
  };

  BilinearFit best;
  best.residual = std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  {
    auto f = descend(svd.matrixU().col(0), svd.matrixV().col(0));
    if (f.residual < best.residual) best = f;
  }
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  for (unsigned r = 0; r < restarts; ++r) {
    ComplexVector b = random_unit_vector(static_cast<std::size_t>(n), rng) * unif(rng);
    ComplexVector g = random_unit_vector(static_cast<std::size_t>(n), rng) * unif(rng);
    auto f = descend(b, g);
    if (f.residual < best.residual) best = f;
  }
  return best;
}

SwitchComparison switch_vs_controlled(const std::array<double, 4>& alpha,
                                      unsigned restarts, std::uint64_t seed) {
  check_alpha(alpha);
  const ComplexMatrix b = coherence_block(switch_action_pauli(alpha));
  const ComplexMatrix m = pauli_coords(b);
  auto weights = [](const std::array<double, 4>& a) {
    RealVector w(4);
    for (int i = 0; i < 4; ++i) w(i) = std::sqrt(2.0) * a[static_cast<std::size_t>(i)];
    return w;
  };
  SwitchComparison r;
  r.residual_single = fit_rank_one_bounded(m, weights(alpha), restarts, seed).residual;
  r.residual_concat =
      fit_rank_one_bounded(m, weights(concatenated_alpha(alpha)), restarts, seed + 1)
          .residual;
  r.match_single = r.residual_single <= tol::kSwitchMatch;
  r.match_concat = r.residual_concat <= tol::kSwitchMatch;
  r.residual = std::min(r.residual_single, r.residual_concat);
  return r;
}

double identity_depolarizing_gap(unsigned restarts, std::uint64_t seed) {
  const ComplexMatrix target = 0.5 * identity(4);
  const RealVector w = RealVector::Constant(4, std::sqrt(2.0) * 0.5);
  return fit_rank_one_bounded(pauli_coords(target), w, restarts, seed).residual;
}

}  // namespace qcomb
