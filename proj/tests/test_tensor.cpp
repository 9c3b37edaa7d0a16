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

#include <cmath>
#include <numbers>

#include "qcomb/errors.hpp"
#include "support.hpp"

using namespace qcomb;
using qcomb::testing::mat;
using qcomb::testing::vec;
using Catch::Matchers::WithinAbs;

TEST_CASE("kron of identities and of X with I") {
  CHECK(max_abs_diff(kron(identity(2), identity(2)), identity(4)) == 0.0);
  const ComplexMatrix xi = kron(pauli(1), identity(2));
  CHECK(xi(0, 2) == Complex(1.0));
  CHECK(xi(1, 3) == Complex(1.0));
  CHECK(xi(2, 0) == Complex(1.0));
  CHECK(xi.cwiseAbs().sum() == 4.0);
}

TEST_CASE("kron shape bookkeeping") {
  const ComplexMatrix a = ComplexMatrix::Ones(2, 3);
  const ComplexMatrix b = ComplexMatrix::Ones(3, 2);
  const ComplexMatrix k = kron(a, b);
  CHECK(k.rows() == 6);
  CHECK(k.cols() == 6);
}

TEST_CASE("partial trace examples") {
  Rng rng = make_rng(11);
  const ComplexMatrix rho = random_density(2, rng);
  const ComplexMatrix sigma = random_density(3, rng);
  CHECK(max_abs_diff(partial_trace(kron(rho, sigma), {2, 3}, {0}), rho) < 1e-14);

  const ComplexVector phi = vectorize(identity(2)) / std::sqrt(2.0);
  const ComplexMatrix reduced = partial_trace(phi * phi.adjoint(), {2, 2}, {1});
  CHECK(max_abs_diff(reduced, identity(2) / 2.0) < 1e-15);

  const ComplexMatrix m = random_density(6, rng) * 3.0;
  const ComplexMatrix all = partial_trace(m, {2, 3}, {});
  REQUIRE(all.rows() == 1);
  CHECK(std::abs(all(0, 0) - m.trace()) < 1e-14);
}

TEST_CASE("partial trace rejects a mismatched shape") {
  CHECK_THROWS_AS(partial_trace(identity(4), {2, 3}, {0}), DimensionError);
}

TEST_CASE("partial trace of a product keeps the first factor times the trace") {
  Rng rng = make_rng(12);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix a = ginibre(3, 3, rng);
    const ComplexMatrix b = ginibre(2, 2, rng);
    CHECK(max_abs_diff(partial_trace(kron(a, b), {3, 2}, {0}), a * b.trace()) < 1e-12);
  }
}

TEST_CASE("permute_subsystems swaps factors of a product") {
  Rng rng = make_rng(13);
  const ComplexMatrix a = ginibre(2, 2, rng);
  const ComplexMatrix b = ginibre(3, 3, rng);
  CHECK(max_abs_diff(permute_subsystems(kron(a, b), {2, 3}, {1, 0}), kron(b, a)) <
        1e-14);
}

TEST_CASE("vectorize places the input index first") {
  CHECK(max_abs_diff(vectorize(identity(2)), vec({1, 0, 0, 1})) == 0.0);
  CHECK(max_abs_diff(vectorize(pauli(1)), vec({0, 1, 1, 0})) == 0.0);
  // |K>> = sum <m|K|n> |n>|m>: entry n*d + m = 1 means <1|K|0> = 1.
  const ComplexMatrix k = devectorize(vec({0, 1, 0, 0}), 2, 2);
  CHECK(max_abs_diff(k, mat({{0, 0}, {1, 0}})) == 0.0);
  CHECK(max_abs_diff(devectorize(vec({1, 0, 0, 1}), 2, 2), identity(2)) == 0.0);
}

TEST_CASE("vectorize and devectorize are inverse") {
  Rng rng = make_rng(14);
  for (int s = 0; s < 10; ++s) {
    const ComplexMatrix k = ginibre(3, 2, rng);
    CHECK(max_abs_diff(devectorize(vectorize(k), 2, 3), k) == 0.0);
    const ComplexVector v = ginibre(6, 1, rng).col(0);
    CHECK(max_abs_diff(vectorize(devectorize(v, 3, 2)), v) == 0.0);
  }
  CHECK_THROWS_AS(devectorize(vec({1, 2, 3}), 2, 2), DimensionError);
}

TEST_CASE("unitary Choi is the projector on its vectorization") {
  Rng rng = make_rng(15);
  const ComplexMatrix u = haar_unitary(2, rng);
  const ComplexVector v = vectorize(u);
  // (I (x) U)|I>> with the input factor first
  const ComplexVector w = kron(identity(2), u) * vectorize(identity(2));
  CHECK(max_abs_diff(v, w) < 1e-15);
}

TEST_CASE("Schatten norms") {
  CHECK_THAT(schatten_norm(identity(3), 1.0), WithinAbs(3.0, 1e-14));
  CHECK_THAT(schatten_norm(mat({{3, 0}, {0, 4}}), 2.0), WithinAbs(5.0, 1e-14));
  Rng rng = make_rng(16);
  CHECK_THAT(schatten_norm(haar_unitary(4, rng), kInfinity), WithinAbs(1.0, 1e-12));
  CHECK_THROWS_AS(schatten_norm(identity(2), 0.5), PreconditionError);
  for (int s = 0; s < 10; ++s) {
    const ComplexMatrix m = ginibre(4, 4, rng);
    CHECK_THAT(std::pow(schatten_norm(m, 2.0), 2), WithinAbs((m.adjoint() * m).trace().real(), 1e-12));
  }
}

TEST_CASE("hermitian_eig examples") {
  auto z = hermitian_eig(pauli(3));
  CHECK_THAT(z.eigenvalues(0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(z.eigenvalues(1), WithinAbs(-1.0, 1e-15));
  auto x = hermitian_eig(pauli(1));
  CHECK_THAT(x.eigenvalues(0), WithinAbs(1.0, 1e-15));
  const ComplexVector plus = vec({1, 1}) / std::sqrt(2.0);
  CHECK_THAT(std::abs(plus.dot(x.eigenvectors.col(0))), WithinAbs(1.0, 1e-14));
  auto id = hermitian_eig(identity(5));
  CHECK(id.eigenvalues.isApproxToConstant(1.0));
  CHECK_THROWS_AS(hermitian_eig(mat({{0, 1}, {0, 0}})), NotHermitianError);
}

TEST_CASE("hermitian_eig reconstructs and is orthonormal") {
  Rng rng = make_rng(17);
  for (std::size_t d : {2u, 7u, 16u, 64u}) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const auto s = hermitian_eig(h);
    const ComplexMatrix& v = s.eigenvectors;
    CHECK(max_abs_diff(v * s.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint(), h) <
          1e-10);
    CHECK(max_abs_diff(v.adjoint() * v, identity(d)) < 1e-10);
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i)
      CHECK(s.eigenvalues(i - 1) >= s.eigenvalues(i));
  }
}

TEST_CASE("expm_generator") {
  CHECK(max_abs_diff(expm_generator(ComplexMatrix::Zero(3, 3), 2.0), identity(3)) < 1e-15);
  const double t = std::numbers::pi / 2;
  const ComplexMatrix expected =
      mat({{std::polar(1.0, -t), 0}, {0, std::polar(1.0, t)}});
  CHECK(max_abs_diff(expm_generator(pauli(3), t), expected) < 1e-15);
  Rng rng = make_rng(18);
  for (int s = 0; s < 10; ++s) {
    const ComplexMatrix h = random_hermitian(3, rng);
    const ComplexMatrix u = expm_generator(h, 0.3);
    CHECK(unitarity_residual(u) < 1e-10);
    CHECK(max_abs_diff(u * expm_generator(h, 0.5), expm_generator(h, 0.8)) < 1e-12);
  }
  CHECK_THROWS_AS(expm_generator(mat({{0, 1}, {0, 0}}), 1.0), NotHermitianError);
}

TEST_CASE("unitary_root principal branch") {
  CHECK(max_abs_diff(unitary_root(identity(3), 5), identity(3)) < 1e-14);
  CHECK(max_abs_diff(unitary_root(pauli(3), 2), mat({{1, 0}, {0, kI}})) < 1e-14);
  Rng rng = make_rng(19);
  for (std::size_t d = 2; d <= 4; ++d) {
    for (unsigned n : {2u, 3u, 7u}) {
      const ComplexMatrix u = haar_unitary(d, rng);
      ComplexMatrix v = unitary_root(u, n);
      ComplexMatrix p = identity(d);
      for (unsigned i = 0; i < n; ++i) p = v * p;
      CHECK(max_abs_diff(p, u) < 1e-9);
    }
  }
  CHECK_THROWS_AS(unitary_root(2.0 * identity(2), 2), NotUnitaryError);
}

TEST_CASE("special_unitary_root has unit determinant") {
  Rng rng = make_rng(20);
  for (std::size_t d : {2u, 3u}) {
    for (int s = 0; s < 20; ++s) {
      const ComplexMatrix u = haar_special_unitary(d, rng);
      const ComplexMatrix v = special_unitary_root(u, static_cast<unsigned>(d));
      ComplexMatrix p = identity(d);
      for (std::size_t i = 0; i < d; ++i) p = v * p;
      CHECK(max_abs_diff(p, u) < 1e-9);
      CHECK(std::abs(v.determinant() - Complex(1.0)) < 1e-9);
    }
  }
}

TEST_CASE("haar_unitary is unitary and seeded") {
  Rng a = make_rng(5), b = make_rng(5);
  const ComplexMatrix u = haar_unitary(4, a);
  CHECK(unitarity_residual(u) < 1e-12);
  CHECK(max_abs_diff(u, haar_unitary(4, b)) == 0.0);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
}
