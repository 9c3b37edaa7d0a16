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

#include "qcomb/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qcomb {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(derive_seed(seed, stream));
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix g(static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex rii = r(i, i);
    const double a = std::abs(rii);
    if (a > 0.0) q.col(i) *= rii / a;
  }
  return q;
}

ComplexMatrix haar_special_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix u = haar_unitary(d, rng);
  const Complex det = u.determinant();
  const double phase = std::arg(det) / static_cast<double>(d);
  return u * std::polar(1.0, -phase);
}

ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  return haar_unitary(rows, rng).leftCols(static_cast<Eigen::Index>(cols));
}

ComplexVector random_unit_vector(std::size_t d, Rng& rng) {
  ComplexVector v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_density(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

std::vector<ComplexMatrix> random_kraus(std::size_t d_in, std::size_t d_out,
                                        std::size_t n_kraus, Rng& rng) {
  // Rows of V are indexed (out, env) with env fastest.
  const ComplexMatrix v = haar_isometry(d_out * n_kraus, d_in, rng);
  std::vector<ComplexMatrix> ks(n_kraus, ComplexMatrix::Zero(
                                             static_cast<Eigen::Index>(d_out),
                                             static_cast<Eigen::Index>(d_in)));
  for (std::size_t m = 0; m < d_out; ++m)
    for (std::size_t e = 0; e < n_kraus; ++e)
      ks[e].row(static_cast<Eigen::Index>(m)) =
          v.row(static_cast<Eigen::Index>(m * n_kraus + e));
  return ks;
}

}  // namespace qcomb
