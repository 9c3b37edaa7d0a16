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

#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace qcomb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Dimensions of the tensor factors of a Hilbert space, first factor most
// significant in the flattened index.
class SubsystemShape {
 public:
  SubsystemShape() = default;
  SubsystemShape(std::vector<std::size_t> dims);
  SubsystemShape(std::initializer_list<std::size_t> dims);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_[i]; }
  std::size_t total() const;

  // Row-major digits of a flat index.
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t flatten(const std::vector<std::size_t>& digits) const;

  bool operator==(const SubsystemShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

struct HermitianSpectrum {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // columns
};

ComplexMatrix identity(std::size_t d);
ComplexVector basis_vector(std::size_t d, std::size_t i);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);
ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b);

// Traces out every factor not listed in keep. The kept factors stay in
// ascending order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            const std::vector<std::size_t>& keep);

// Reorders tensor factors: factor i of the result is factor perm[i] of m.
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 const SubsystemShape& shape,
                                 const std::vector<std::size_t>& perm);
ComplexVector permute_vector(const ComplexVector& v,
                             const SubsystemShape& shape,
                             const std::vector<std::size_t>& perm);
// Acts on the rows only, for operators whose columns carry another space.
ComplexMatrix permute_rows(const ComplexMatrix& m, const SubsystemShape& shape,
                           const std::vector<std::size_t>& perm);
SubsystemShape permuted_shape(const SubsystemShape& shape,
                              const std::vector<std::size_t>& perm);

// |K>> = sum_{mn} <m|K|n> |n>|m>, the input index being the first factor.
ComplexVector vectorize(const ComplexMatrix& k);
ComplexMatrix devectorize(const ComplexVector& v, std::size_t d_in,
                          std::size_t d_out);

// p = infinity gives the largest singular value.
double schatten_norm(const ComplexMatrix& m, double p);
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);
double hermiticity_residual(const ComplexMatrix& m);
double unitarity_residual(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

HermitianSpectrum hermitian_eig(const ComplexMatrix& m);

// e^{-i h t}.
ComplexMatrix expm_generator(const ComplexMatrix& h, double t);

// Principal n-th root with eigenphases taken in (-pi, pi].
ComplexMatrix unitary_root(const ComplexMatrix& u, unsigned n);

// An n-th root v of u with det(v) = 1. Requires det(u) = 1. Starts from the
// principal root and moves the eigenphases nearest the cut to the adjacent
// branch until the determinant is 1.
ComplexMatrix special_unitary_root(const ComplexMatrix& u, unsigned n);

// Eigenvalues and unit eigenvectors of a normal matrix via complex Schur.
struct NormalSpectrum {
  ComplexVector eigenvalues;
  ComplexMatrix eigenvectors;
};
NormalSpectrum normal_eig(const ComplexMatrix& u);

// Principal square root of a PSD matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

ComplexMatrix pauli(std::size_t i);  // 0:I 1:X 2:Y 3:Z

// Rotates a vector so that its largest-magnitude entry is real positive.
ComplexVector fix_phase(const ComplexVector& v);

}  // namespace qcomb
