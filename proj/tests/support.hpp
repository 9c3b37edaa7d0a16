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

#include <catch_amalgamated.hpp>

#include "qcomb/random.hpp"
#include "qcomb/tensor.hpp"

namespace qcomb::testing {

inline ComplexMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

inline ComplexVector vec(std::initializer_list<Complex> xs) {
  ComplexVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

// Unitary with a known eigenbasis: returns (U, W) where W's columns are
// eigenvectors of U.
inline std::pair<ComplexMatrix, ComplexMatrix> random_diagonalizable(std::size_t d,
                                                                     Rng& rng) {
  const ComplexMatrix w = haar_unitary(d, rng);
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  ComplexMatrix diag = ComplexMatrix::Zero(w.rows(), w.cols());
  for (Eigen::Index i = 0; i < w.rows(); ++i) diag(i, i) = std::polar(1.0, phase(rng));
  return {w * diag * w.adjoint(), w};
}

}  // namespace qcomb::testing
