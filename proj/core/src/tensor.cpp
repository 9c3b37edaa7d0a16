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

#include "qcomb/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qcomb/errors.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Flat offsets of all multi-indices over the listed factors, enumerated in
// row-major order of the list, measured with the strides of the full shape.
std::vector<std::size_t> offsets(const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& factors) {
  const auto strides = strides_of(dims);
  std::vector<std::size_t> out{0};
  for (std::size_t f : factors) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[f]);
    for (std::size_t base : out)
      for (std::size_t k = 0; k < dims[f]; ++k)
        next.push_back(base + k * strides[f]);
    out = std::move(next);
  }
  return out;
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": matrix is " << m.rows() << "x" << m.cols()
       << ", expected square";
    throw DimensionError(os.str());
  }
}

void check_shape(const SubsystemShape& shape, Eigen::Index side,
                 const char* what) {
  if (shape.total() != static_cast<std::size_t>(side)) {
    std::ostringstream os;
    os << what << ": shape product " << shape.total()
       << " does not match side " << side;
    throw DimensionError(os.str());
  }
}

void check_perm(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) throw DimensionError("permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw DimensionError("invalid permutation");
    seen[p] = true;
  }
}

double wrap_phase(double phi) {
  // (-pi, pi]
  if (phi <= -std::numbers::pi + 1e-12) phi += 2.0 * std::numbers::pi;
  return phi;
}

}  // namespace

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims)
    : dims_(std::move(dims)) {
  for (std::size_t d : dims_)
    if (d == 0) throw DimensionError("subsystem dimension must be positive");
}

SubsystemShape::SubsystemShape(std::initializer_list<std::size_t> dims)
    : SubsystemShape(std::vector<std::size_t>(dims)) {}

std::size_t SubsystemShape::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         std::multiplies<>());
}

std::vector<std::size_t> SubsystemShape::digits(std::size_t index) const {
  std::vector<std::size_t> d(dims_.size());
  for (std::size_t i = dims_.size(); i-- > 0;) {
    d[i] = index % dims_[i];
    index /= dims_[i];
  }
  return d;
}

std::size_t SubsystemShape::flatten(
    const std::vector<std::size_t>& digits) const {
  if (digits.size() != dims_.size())
    throw DimensionError("digit count does not match shape");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) idx = idx * dims_[i] + digits[i];
  return idx;
}

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                 static_cast<Eigen::Index>(d));
}

ComplexVector basis_vector(std::size_t d, std::size_t i) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(i)) = 1.0;
  return v;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            const std::vector<std::size_t>& keep) {
  check_square(m, "partial_trace");
  check_shape(shape, m.rows(), "partial_trace");
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw DimensionError("partial_trace: repeated factor in keep");
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < shape.size(); ++f) {
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);
  }
  if (!kept.empty() && kept.back() >= shape.size())
    throw DimensionError("partial_trace: factor index out of range");

  const auto ko = offsets(shape.dims(), kept);
  const auto to = offsets(shape.dims(), traced);
  const auto n = static_cast<Eigen::Index>(ko.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      Complex acc = 0.0;
      for (std::size_t t : to)
        acc += m(static_cast<Eigen::Index>(ko[a] + t),
                 static_cast<Eigen::Index>(ko[b] + t));
      out(a, b) = acc;
    }
  }
  return out;
}

SubsystemShape permuted_shape(const SubsystemShape& shape,
                              const std::vector<std::size_t>& perm) {
  check_perm(perm, shape.size());
  std::vector<std::size_t> d(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) d[i] = shape[perm[i]];
  return SubsystemShape(std::move(d));
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const SubsystemShape& shape,
                                 const std::vector<std::size_t>& perm) {
  check_square(m, "permute_subsystems");
  check_shape(shape, m.rows(), "permute_subsystems");
  check_perm(perm, shape.size());
  const auto map = offsets(shape.dims(), perm);
  const auto n = m.rows();
  ComplexMatrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto mj = static_cast<Eigen::Index>(map[j]);
    for (Eigen::Index i = 0; i < n; ++i)
      out(i, j) = m(static_cast<Eigen::Index>(map[i]), mj);
  }
  return out;
}

ComplexVector permute_vector(const ComplexVector& v,
                             const SubsystemShape& shape,
                             const std::vector<std::size_t>& perm) {
  check_shape(shape, v.size(), "permute_vector");
  check_perm(perm, shape.size());
  const auto map = offsets(shape.dims(), perm);
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = v(static_cast<Eigen::Index>(map[i]));
  return out;
}

ComplexMatrix permute_rows(const ComplexMatrix& m, const SubsystemShape& shape,
                           const std::vector<std::size_t>& perm) {
  check_shape(shape, m.rows(), "permute_rows");
  check_perm(perm, shape.size());
  const auto map = offsets(shape.dims(), perm);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    out.row(i) = m.row(static_cast<Eigen::Index>(map[i]));
  return out;
}

ComplexVector vectorize(const ComplexMatrix& k) {
  // Column-major storage already places the input index first.
  return Eigen::Map<const ComplexVector>(k.data(), k.size());
}

ComplexMatrix devectorize(const ComplexVector& v, std::size_t d_in,
                          std::size_t d_out) {
  if (static_cast<std::size_t>(v.size()) != d_in * d_out) {
    std::ostringstream os;
    os << "devectorize: length " << v.size() << " != " << d_in << "*" << d_out;
    throw DimensionError(os.str());
  }
  return Eigen::Map<const ComplexMatrix>(v.data(),
                                         static_cast<Eigen::Index>(d_out),
                                         static_cast<Eigen::Index>(d_in));
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (!(p >= 1.0)) throw PreconditionError("schatten_norm: p must be >= 1");
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const RealVector s = svd.singularValues();
  if (std::isinf(p)) return s.maxCoeff();
  if (p == 1.0) return s.sum();
  if (p == 2.0) return std::sqrt(s.squaredNorm());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), p);
  return std::pow(acc, 1.0 / p);
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()))
      .cwiseAbs()
      .maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermiticity_residual(m) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return unitarity_residual(m) <= tol;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
  check_square(m, "hermitian_eig");
  const double r = hermiticity_residual(m);
  if (r > tol::kHermiticity) {
    std::ostringstream os;
    os << "hermitian_eig: hermiticity residual " << r;
    throw NotHermitianError(os.str());
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
  if (es.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver did not converge");
  HermitianSpectrum out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

ComplexMatrix expm_generator(const ComplexMatrix& h, double t) {
  const auto spec = hermitian_eig(h);
  ComplexVector phases(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(-kI * spec.eigenvalues(i) * t);
  return spec.eigenvectors * phases.asDiagonal() *
         spec.eigenvectors.adjoint();
}

NormalSpectrum normal_eig(const ComplexMatrix& u) {
  check_square(u, "normal_eig");
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw Error("normal_eig: Schur decomposition did not converge");
  return {schur.matrixT().diagonal(), schur.matrixU()};
}

ComplexMatrix unitary_root(const ComplexMatrix& u, unsigned n) {
  if (n == 0) throw PreconditionError("unitary_root: n must be positive");
  const double r = unitarity_residual(u);
  if (r > tol::kUnitarity) {
    std::ostringstream os;
    os << "unitary_root: unitarity residual " << r;
    throw NotUnitaryError(os.str());
  }
  const auto spec = normal_eig(u);
  ComplexVector roots(spec.eigenvalues.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    const double phi = wrap_phase(std::arg(spec.eigenvalues(i)));
    roots(i) = std::polar(1.0, phi / n);
  }
  return spec.eigenvectors * roots.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix special_unitary_root(const ComplexMatrix& u, unsigned n) {
  if (n == 0) throw PreconditionError("special_unitary_root: n must be positive");
  const double r = unitarity_residual(u);
  if (r > tol::kUnitarity) {
    std::ostringstream os;
    os << "special_unitary_root: unitarity residual " << r;
    throw NotUnitaryError(os.str());
  }
  const auto spec = normal_eig(u);
  const Eigen::Index d = spec.eigenvalues.size();
  std::vector<double> phi(static_cast<std::size_t>(d));
  double total = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    phi[i] = wrap_phase(std::arg(spec.eigenvalues(i)));
    total += phi[i];
  }
  const double winding = total / (2.0 * std::numbers::pi);
  const long m = std::lround(winding);
  if (std::abs(winding - static_cast<double>(m)) > 1e-8)
    throw PreconditionError("special_unitary_root: det(u) != 1");
  // Each shift of one eigenphase by -2*pi*sign(m) removes one winding.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  if (m > 0) {
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return phi[a] > phi[b]; });
  } else {
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return phi[a] < phi[b]; });
  }
  const long shifts = std::labs(m);
  if (shifts > d) throw PreconditionError("special_unitary_root: no SU branch");
  for (long k = 0; k < shifts; ++k)
    phi[order[k]] -= (m > 0 ? 2.0 : -2.0) * std::numbers::pi;
  ComplexVector roots(d);
  for (Eigen::Index i = 0; i < d; ++i) roots(i) = std::polar(1.0, phi[i] / n);
  return spec.eigenvectors * roots.asDiagonal() * spec.eigenvectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto spec = hermitian_eig(m);
  RealVector s = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  return spec.eigenvectors * s.cast<Complex>().asDiagonal() *
         spec.eigenvectors.adjoint();
}

ComplexMatrix pauli(std::size_t i) {
  ComplexMatrix p(2, 2);
  switch (i) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, -kI, kI, 0; break;
    case 3: p << 1, 0, 0, -1; break;
    default: throw PreconditionError("pauli: index must be 0..3");
  }
  return p;
}

ComplexVector fix_phase(const ComplexVector& v) {
  if (v.size() == 0) return v;
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return v;
  Eigen::Index k = 0;
  while (std::abs(v(k)) < top - 1e-12) ++k;
  return v * (std::conj(v(k)) / std::abs(v(k)));
}

}  // namespace qcomb
