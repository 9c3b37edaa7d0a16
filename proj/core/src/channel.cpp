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

#include "qcomb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcomb/errors.hpp"
#include "qcomb/tolerances.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> ops, std::size_t din,
                   std::size_t dout)
    : operators(std::move(ops)), d_in(din), d_out(dout) {
  if (d_in == 0 || d_out == 0)
    throw DimensionError("KrausSet: dimensions must be positive");
  for (const auto& k : operators) {
    if (k.rows() != ix(d_out) || k.cols() != ix(d_in)) {
      std::ostringstream os;
      os << "KrausSet: operator is " << k.rows() << "x" << k.cols()
         << ", expected " << d_out << "x" << d_in;
      throw DimensionError(os.str());
    }
  }
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) {
  if (ops.empty()) throw DimensionError("KrausSet: empty operator list");
  const auto din = static_cast<std::size_t>(ops.front().cols());
  const auto dout = static_cast<std::size_t>(ops.front().rows());
  *this = KrausSet(std::move(ops), din, dout);
}

double KrausSet::tp_residual() const {
  ComplexMatrix s = ComplexMatrix::Zero(ix(d_in), ix(d_in));
  for (const auto& k : operators) s += k.adjoint() * k;
  return max_abs_diff(s, identity(d_in));
}

bool KrausSet::trace_preserving(double tol) const {
  return tp_residual() <= tol;
}

ChoiMatrix::ChoiMatrix(ComplexMatrix m, std::size_t din, std::size_t dout)
    : matrix(std::move(m)), d_in(din), d_out(dout) {
  const auto side = ix(d_in * d_out);
  if (matrix.rows() != side || matrix.cols() != side) {
    std::ostringstream os;
    os << "ChoiMatrix: matrix is " << matrix.rows() << "x" << matrix.cols()
       << ", expected side " << side;
    throw DimensionError(os.str());
  }
}

Channel::Channel(KrausSet kraus)
    : choi_(kraus_to_choi(kraus)), kraus_(std::move(kraus)) {}

Channel::Channel(ChoiMatrix choi) : choi_(std::move(choi)) {}

KrausSet Channel::kraus() const {
  if (kraus_) return *kraus_;
  return choi_to_orthogonal_kraus(choi_);
}

ChoiMatrix kraus_to_choi(const KrausSet& k) {
  const auto side = ix(k.d_in * k.d_out);
  ComplexMatrix j = ComplexMatrix::Zero(side, side);
  for (const auto& op : k.operators) {
    const ComplexVector v = vectorize(op);
    j.noalias() += v * v.adjoint();
  }
  return ChoiMatrix(std::move(j), k.d_in, k.d_out);
}

KrausSet choi_to_orthogonal_kraus(const ChoiMatrix& j) {
  const auto spec = hermitian_eig(j.matrix);
  const double lmin = spec.eigenvalues.size() ? spec.eigenvalues.minCoeff() : 0.0;
  if (lmin < tol::kPsdFloor) {
    std::ostringstream os;
    os << "choi_to_orthogonal_kraus: eigenvalue " << lmin
       << " below PSD floor";
    throw NotCPError(os.str());
  }
  const double lmax = spec.eigenvalues.size() ? spec.eigenvalues.maxCoeff() : 0.0;
  const double cutoff = 1e-12 * std::max(1.0, lmax);
  std::vector<ComplexMatrix> ops;
  for (Idx i = 0; i < spec.eigenvalues.size(); ++i) {
    const double l = spec.eigenvalues(i);
    if (l <= cutoff) break;
    const ComplexVector v = fix_phase(spec.eigenvectors.col(i));
    ops.push_back(std::sqrt(l) * devectorize(v, j.d_in, j.d_out));
  }
  return KrausSet(std::move(ops), j.d_in, j.d_out);
}

ChannelReport validate_channel(const ChoiMatrix& j) {
  ChannelReport r;
  r.hermiticity_residual = hermiticity_residual(j.matrix);
  const ComplexMatrix h = 0.5 * (j.matrix + j.matrix.adjoint());
  r.min_eigenvalue = hermitian_eig(h).eigenvalues.minCoeff();
  r.cp = r.hermiticity_residual <= tol::kHermiticity &&
         r.min_eigenvalue >= tol::kPsdFloor;
  const ComplexMatrix tr_out = partial_trace(j.matrix, j.shape(), {0});
  r.tp_residual = max_abs_diff(tr_out, identity(j.d_in));
  r.tp = r.tp_residual <= tol::kTracePreserving;
  return r;
}

ComplexMatrix apply_channel(const ChoiMatrix& j, const ComplexMatrix& rho) {
  if (rho.rows() != ix(j.d_in) || rho.cols() != ix(j.d_in))
    throw DimensionError("apply_channel: input state has wrong dimension");
  const auto d = ix(j.d_out);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Idx n = 0; n < rho.rows(); ++n)
    for (Idx np = 0; np < rho.cols(); ++np)
      if (rho(np, n) != Complex(0.0))
        out += rho(np, n) * j.matrix.block(np * d, n * d, d, d);
  return out;
}

ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho) {
  if (rho.rows() != ix(k.d_in) || rho.cols() != ix(k.d_in))
    throw DimensionError("apply_kraus: input state has wrong dimension");
  ComplexMatrix out = ComplexMatrix::Zero(ix(k.d_out), ix(k.d_out));
  for (const auto& op : k.operators) out += op * rho * op.adjoint();
  return out;
}

ChoiMatrix compose(const ChoiMatrix& first, const ChoiMatrix& second) {
  if (first.d_out != second.d_in) {
    std::ostringstream os;
    os << "compose: first maps to dimension " << first.d_out
       << " but second expects " << second.d_in;
    throw DimensionError(os.str());
  }
  const auto a = ix(first.d_in), b = ix(first.d_out), c = ix(second.d_out);
  // J(ac, a'c') = sum_{bb'} J1(ab, a'b') J2(bc, b'c')
  ComplexMatrix m1(a * a, b * b), m2(b * b, c * c);
  for (Idx x = 0; x < a; ++x)
    for (Idx xp = 0; xp < a; ++xp)
      for (Idx y = 0; y < b; ++y)
        for (Idx yp = 0; yp < b; ++yp)
          m1(x * a + xp, y * b + yp) = first.matrix(x * b + y, xp * b + yp);
  for (Idx y = 0; y < b; ++y)
    for (Idx yp = 0; yp < b; ++yp)
      for (Idx z = 0; z < c; ++z)
        for (Idx zp = 0; zp < c; ++zp)
          m2(y * b + yp, z * c + zp) = second.matrix(y * c + z, yp * c + zp);
  const ComplexMatrix p = m1 * m2;
  ComplexMatrix j(a * c, a * c);
  for (Idx x = 0; x < a; ++x)
    for (Idx xp = 0; xp < a; ++xp)
      for (Idx z = 0; z < c; ++z)
        for (Idx zp = 0; zp < c; ++zp)
          j(x * c + z, xp * c + zp) = p(x * a + xp, z * c + zp);
  return ChoiMatrix(std::move(j), first.d_in, second.d_out);
}

ComplexMatrix stinespring(const KrausSet& k) {
  if (k.d_in != k.d_out)
    throw PreconditionError("stinespring: requires d_in == d_out");
  const double r = k.tp_residual();
  if (r > tol::kTracePreserving) {
    std::ostringstream os;
    os << "stinespring: Kraus set not trace preserving, residual " << r;
    throw PreconditionError(os.str());
  }
  const auto d = ix(k.d_in);
  const auto aux = ix(k.size() + 1);
  const Idx total = d * aux;
  ComplexMatrix v = ComplexMatrix::Zero(total, d);
  for (Idx i = 1; i < aux; ++i) {
    const auto& op = k.operators[static_cast<std::size_t>(i - 1)];
    for (Idx m = 0; m < d; ++m)
      for (Idx jj = 0; jj < d; ++jj) v(m * aux + i, jj) = op(m, jj);
  }
  const ComplexMatrix proj = identity(static_cast<std::size_t>(total)) -
                             v * v.adjoint();
  const auto spec = hermitian_eig(0.5 * (proj + proj.adjoint()));
  ComplexMatrix u(total, total);
  Idx next = 0;
  for (Idx col = 0; col < total; ++col) {
    if (col % aux == 0) {
      u.col(col) = v.col(col / aux);
    } else {
      u.col(col) = spec.eigenvectors.col(next++);
    }
  }
  return u;
}

ChoiMatrix stinespring_reduced_choi(const ComplexMatrix& u, std::size_t d,
                                    std::size_t aux) {
  if (u.rows() != ix(d * aux) || u.cols() != ix(d * aux))
    throw DimensionError("stinespring_reduced_choi: unitary has wrong side");
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < aux; ++i) {
    ComplexMatrix op(ix(d), ix(d));
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t jj = 0; jj < d; ++jj)
        op(ix(m), ix(jj)) = u(ix(m * aux + i), ix(jj * aux));
    ops.push_back(std::move(op));
  }
  return kraus_to_choi(KrausSet(std::move(ops), d, d));
}

ComplexMatrix PauliCoefficients::as_matrix() const {
  ComplexMatrix m(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = c[a][b];
  return m;
}

ChoiMatrix PauliCoefficients::reconstruct() const {
  ComplexMatrix j = ComplexMatrix::Zero(4, 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      j += c[a][b] * vectorize(pauli(a)) * vectorize(pauli(b)).adjoint();
  return ChoiMatrix(std::move(j), 2, 2);
}

PauliCoefficients pauli_decompose(const ChoiMatrix& j) {
  if (j.d_in != 2 || j.d_out != 2)
    throw DimensionError("pauli_decompose: qubit channel required");
  PauliCoefficients pc;
  for (std::size_t a = 0; a < 4; ++a) {
    const ComplexVector va = vectorize(pauli(a));
    for (std::size_t b = 0; b < 4; ++b) {
      const ComplexVector vb = vectorize(pauli(b));
      pc.c[a][b] = va.dot(j.matrix * vb) / 4.0;
    }
  }
  return pc;
}

ChoiMatrix identity_choi(std::size_t d) {
  return unitary_choi(identity(d));
}

ChoiMatrix unitary_choi(const ComplexMatrix& u) {
  const ComplexVector v = vectorize(u);
  return ChoiMatrix(v * v.adjoint(), static_cast<std::size_t>(u.cols()),
                    static_cast<std::size_t>(u.rows()));
}

ChoiMatrix tensor_channels(const ChoiMatrix& a, const ChoiMatrix& b) {
  const SubsystemShape s{a.d_in, a.d_out, b.d_in, b.d_out};
  return ChoiMatrix(permute_subsystems(kron(a.matrix, b.matrix), s, {0, 2, 1, 3}),
                    a.d_in * b.d_in, a.d_out * b.d_out);
}

ChoiMatrix pauli_channel_choi(const std::array<double, 4>& probabilities) {
  ComplexMatrix j = ComplexMatrix::Zero(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const ComplexVector v = vectorize(pauli(i));
    j += probabilities[i] * v * v.adjoint();
  }
  return ChoiMatrix(std::move(j), 2, 2);
}

ChoiMatrix depolarizing_choi() {
  return pauli_channel_choi({0.25, 0.25, 0.25, 0.25});
}

double choi_trace_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.d_in != b.d_in || a.d_out != b.d_out)
    throw DimensionError("choi_trace_distance: dimension mismatch");
  return 0.5 * schatten_norm(a.matrix - b.matrix, 1.0);
}

double choi_max_diff(const ChoiMatrix& a, const ChoiMatrix& b) {
  if (a.d_in != b.d_in || a.d_out != b.d_out)
    throw DimensionError("choi_max_diff: dimension mismatch");
  return max_abs_diff(a.matrix, b.matrix);
}

}  // namespace qcomb
