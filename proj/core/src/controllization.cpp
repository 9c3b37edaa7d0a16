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

#include "qcomb/controllization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Sparse>

#include "qcomb/errors.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

struct Split {
  std::vector<std::size_t> order;
  std::size_t odd_dim = 1;
  std::size_t even_dim = 1;
};

// [0, 2N+1, 1, 3, ..., 2N-1, 2, 4, ..., 2N]
Split neutral_order(const CombShape& shape) {
  const std::size_t n = shape.slots();
  if (shape[0] != shape[2 * n + 1])
    throw DimensionError("neutralization comb needs d_0 == d_{2N+1}");
  Split s;
  s.order = {0, 2 * n + 1};
  for (std::size_t k = 1; k <= n; ++k) {
    s.order.push_back(2 * k - 1);
    s.odd_dim *= shape[2 * k - 1];
  }
  for (std::size_t k = 1; k <= n; ++k) {
    s.order.push_back(2 * k);
    s.even_dim *= shape[2 * k];
  }
  return s;
}

void check_density(const ComplexMatrix& rho, std::size_t dim) {
  if (rho.rows() != ix(dim) || rho.cols() != ix(dim)) {
    std::ostringstream os;
    os << "state is " << rho.rows() << "x" << rho.cols()
       << " but the slot inputs have dimension " << dim;
    throw DimensionError(os.str());
  }
  if (hermiticity_residual(rho) > tol::kHermiticity)
    throw PreconditionError("state is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol::kTracePreserving)
    throw PreconditionError("state does not have unit trace");
  if (hermitian_eig(rho).eigenvalues.minCoeff() < tol::kPsdFloor)
    throw PreconditionError("state is not positive semidefinite");
}

ComplexVector normalized(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (std::abs(nrm - 1.0) > 1e-9)
    throw PreconditionError("state vector must have unit norm");
  return psi;
}

}  // namespace

CombChoi prepare_traceout_comb(const ComplexMatrix& rho, const CombShape& shape) {
  const Split s = neutral_order(shape);
  check_density(rho, s.odd_dim);
  if (shape.total() > tol::kMaxDenseSide)
    throw BudgetError("prepare_traceout_comb: comb too large for a dense Choi");
  const ComplexVector iv = vectorize(identity(shape[0]));
  const ComplexMatrix m =
      kron(kron(iv * iv.adjoint(), rho), identity(s.even_dim));
  return CombChoi(to_comb_order(m, shape, s.order), shape);
}

CombKraus prepare_traceout_kraus(const ComplexMatrix& rho, const CombShape& shape) {
  const Split s = neutral_order(shape);
  check_density(rho, s.odd_dim);
  const ComplexVector iv = vectorize(identity(shape[0]));
  const auto spec = hermitian_eig(rho);
  std::vector<ComplexMatrix> ops;
  for (Idx a = 0; a < spec.eigenvalues.size(); ++a) {
    const double p = spec.eigenvalues(a);
    if (p <= 1e-14) continue;
    const ComplexVector head = kron_vec(iv, std::sqrt(p) * fix_phase(spec.eigenvectors.col(a)));
    for (std::size_t j = 0; j < s.even_dim; ++j) {
      const ComplexVector v = kron_vec(head, basis_vector(s.even_dim, j));
      ops.push_back(comb_operator(to_comb_order(v, shape, s.order), shape));
    }
  }
  return CombKraus(std::move(ops), shape);
}

ComplexMatrix neutralization_operator(const ComplexVector& phi_in,
                                      const ComplexVector& phi_out,
                                      const CombShape& shape) {
  const Split s = neutral_order(shape);
  if (phi_in.size() != ix(s.odd_dim) || phi_out.size() != ix(s.even_dim))
    throw DimensionError("neutralization_operator: state dimensions do not fit");
  const ComplexVector v =
      kron_vec(kron_vec(vectorize(identity(shape[0])), phi_in), phi_out);
  return comb_operator(to_comb_order(v, shape, s.order), shape);
}

CombChoi controlled_neutralization(const CombChoi& neutral, const ComplexMatrix& s0) {
  return controlled_comb_two(neutral, s0, identity_comb(neutral.shape),
                             identity_comb_operator(neutral.shape));
}

CombKraus controlled_neutralization(const CombKraus& neutral,
                                    const ComplexMatrix& s0) {
  return controlled_comb_two_kraus(neutral, s0, identity_comb_kraus(neutral.shape),
                                   identity_comb_operator(neutral.shape));
}

EigenstateResult eigenstate_controllization(const ComplexMatrix& u,
                                            const ComplexVector& psi) {
  if (!is_unitary(u, tol::kUnitarity))
    throw NotUnitaryError("eigenstate_controllization: input is not unitary");
  if (psi.size() != u.rows())
    throw DimensionError("eigenstate_controllization: psi has wrong dimension");
  const ComplexVector p = normalized(psi);
  const Complex overlap = p.dot(u * p);
  const double res = (u * p - overlap * p).norm();
  if (res > tol::kEigenvector) {
    std::ostringstream os;
    os << "eigenstate_controllization: psi is not an eigenvector, residual " << res;
    throw PreconditionError(os.str());
  }
  const std::size_t d = static_cast<std::size_t>(u.rows());
  const CombShape shape = CombShape::uniform(1, d);
  const CombChoi neutral = prepare_traceout_comb(p * p.adjoint(), shape);
  const ComplexMatrix s0 = neutralization_operator(p, p.conjugate(), shape);
  const CombChoi comb = controlled_neutralization(neutral, s0);
  const ChoiMatrix a = unitary_choi(u);
  const ChoiMatrix out = link_apply(comb, {a});

  EigenstateResult r{controlled_from_choi(out, a), std::arg(overlap), 0.0};
  r.controlled.theta = -r.theta_u;
  r.residual = max_abs_diff(out.matrix, controlled_unitary(u, -r.theta_u).choi.matrix);
  return r;
}

ComplexVector antisym_state(std::size_t d) {
  if (d < 1) throw PreconditionError("antisym_state: d must be positive");
  if (d > 6) throw BudgetError("antisym_state: d^d exceeds the memory budget");
  std::size_t len = 1;
  for (std::size_t i = 0; i < d; ++i) len *= d;
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  ComplexVector a = ComplexVector::Zero(ix(len));
  double count = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) idx = idx * d + perm[i];
    a(ix(idx)) = (inversions % 2 == 0) ? 1.0 : -1.0;
    count += 1.0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a / std::sqrt(count);
}

MulticopyResult multicopy_controllization(const ComplexMatrix& v) {
  if (!is_unitary(v, tol::kUnitarity))
    throw NotUnitaryError("multicopy_controllization: input is not unitary");
  const std::size_t d = static_cast<std::size_t>(v.rows());
  const CombShape shape = CombShape::uniform(d, d);
  const ComplexVector a = antisym_state(d);
  const CombKraus neutral = prepare_traceout_kraus(a * a.adjoint(), shape);
  const ComplexMatrix s0 = neutralization_operator(a, a.conjugate(), shape);
  const CombKraus comb = controlled_neutralization(neutral, s0);
  const ChoiMatrix out =
      link_apply_unitaries(comb, std::vector<ComplexMatrix>(d, v));

  ComplexMatrix vd = identity(d);
  for (std::size_t i = 0; i < d; ++i) vd = v * vd;
  const double theta = -std::arg(v.determinant());
  MulticopyResult r{controlled_from_choi(out, unitary_choi(vd)), 0.0};
  r.controlled.theta = theta;
  r.residual = max_abs_diff(out.matrix, controlled_unitary(vd, theta).choi.matrix);
  return r;
}

InvariantSubspaceReport invariant_subspace_check(const ComplexMatrix& u,
                                                 std::size_t n) {
  if (!is_unitary(u, tol::kUnitarity))
    throw NotUnitaryError("invariant_subspace_check: input is not unitary");
  if (n == 0) throw PreconditionError("invariant_subspace_check: n must be positive");
  const std::size_t d = static_cast<std::size_t>(u.rows());
  std::size_t len = 1;
  for (std::size_t i = 0; i < n; ++i) {
    len *= d;
    if (len > 1024) throw BudgetError("invariant_subspace_check: d^n exceeds 1024");
  }

  const NormalSpectrum spec = normal_eig(u);
  Complex det(1.0);
  for (Idx i = 0; i < spec.eigenvalues.size(); ++i) det *= spec.eigenvalues(i);
  const Complex target = std::pow(det, static_cast<double>(n));

  InvariantSubspaceReport r;
  r.phase_residual = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best;
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t idx = 0; idx < len; ++idx) {
    std::size_t rem = idx;
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = rem % d;
      rem /= d;
    }
    Complex mu(1.0);
    for (std::size_t k : digits) mu *= spec.eigenvalues(ix(k));
    const double res = std::abs(std::pow(mu, static_cast<double>(d)) - target);
    if (res < r.phase_residual) {
      r.phase_residual = res;
      best = digits;
    }
  }
  r.exists = r.phase_residual <= tol::kEigenvector;
  if (r.exists) {
    ComplexVector w = ComplexVector::Ones(1);
    for (std::size_t k : best) w = kron_vec(w, spec.eigenvectors.col(ix(k)));
    r.witness = w;
  }

  // Common kernel of sum_k E_ij^{(k)} - (n/d) delta_ij I over all matrix units.
  using Sparse = Eigen::SparseMatrix<Complex>;
  Sparse g(ix(len), ix(len));
  const double m = static_cast<double>(n) / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Eigen::Triplet<Complex>> trip;
      for (std::size_t col = 0; col < len; ++col) {
        std::size_t rem = col;
        for (std::size_t k = n; k-- > 0;) {
          digits[k] = rem % d;
          rem /= d;
        }
        for (std::size_t k = 0; k < n; ++k) {
          if (digits[k] != j) continue;
          auto moved = digits;
          moved[k] = i;
          std::size_t row = 0;
          for (std::size_t x : moved) row = row * d + x;
          trip.emplace_back(ix(row), ix(col), Complex(1.0));
        }
        if (i == j) trip.emplace_back(ix(col), ix(col), Complex(-m));
      }
      Sparse l(ix(len), ix(len));
      l.setFromTriplets(trip.begin(), trip.end());
      g += Sparse(l.adjoint()) * l;
    }
  }
  const auto gs = hermitian_eig(ComplexMatrix(g));
  for (Idx i = 0; i < gs.eigenvalues.size(); ++i)
    if (std::abs(gs.eigenvalues(i)) <= 1e-9) ++r.group_invariant_dim;
  return r;
}

}  // namespace qcomb
