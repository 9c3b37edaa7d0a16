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

#include "qcomb/channel.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/randomization.hpp"
#include "support.hpp"

using namespace qcomb;
using Catch::Matchers::WithinAbs;

TEST_CASE("randomization sets") {
  CHECK(pauli_set().size() == 4);
  CHECK(clifford_set().size() == 24);
  CHECK(clifford_representatives().size() == 6);
  CHECK(generalized_pauli_set(3).size() == 9);
  CHECK(generalized_pauli_set(3).dim() == 3);
  CHECK(normalizes_paulis(pauli_set()));
  CHECK(normalizes_paulis(clifford_set()));
  for (const auto& u : clifford_set().unitaries) CHECK(unitarity_residual(u) < 1e-12);
  CHECK(randomization_set("clifford").size() == 24);
  CHECK_THROWS_AS(randomization_set("bogus"), PreconditionError);
}

TEST_CASE("Clifford elements are distinct up to phase") {
  const auto& u = clifford_set().unitaries;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = a + 1; b < u.size(); ++b)
      CHECK(std::abs((u[a].adjoint() * u[b]).trace()) < 2.0 - 1e-9);
}

TEST_CASE("randomization comb is a valid comb") {
  for (const auto& set : {pauli_set(), clifford_set()}) {
    const CombKraus c = randomization_comb(set);
    CHECK(comb_kraus_conditions(c).valid);
    Rng rng = make_rng(61);
    const ComplexMatrix u = haar_unitary(2, rng);
    CHECK(choi_max_diff(link_apply_unitaries(c, {u}),
                        randomization_step_choi(u, set, false)) < 1e-12);
  }
}

TEST_CASE("controlled randomization step") {
  Rng rng = make_rng(62);
  const ComplexMatrix u = haar_unitary(2, rng);
  const ChoiMatrix step = randomization_step_choi(u, pauli_set(), true);
  const auto r = validate_channel(step);
  CHECK(r.cp);
  CHECK(r.tp);
  // |1> branch applies u exactly.
  const ComplexMatrix rho = random_density(2, rng);
  const ComplexMatrix p1 = basis_vector(2, 1) * basis_vector(2, 1).adjoint();
  const ComplexMatrix out = apply_channel(step, kron(p1, rho));
  CHECK(max_abs_diff(out.bottomRightCorner(2, 2), u * rho * u.adjoint()) < 1e-12);
}

TEST_CASE("Pauli twirl of a unitary is a Pauli channel") {
  Rng rng = make_rng(63);
  const ChoiMatrix j = randomization_step_choi(haar_unitary(2, rng), pauli_set(), false);
  const auto c = pauli_decompose(j);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      if (a != b) CHECK(std::abs(c.c[a][b]) < 1e-12);
}

TEST_CASE("randomized coefficients match the closed forms") {
  const ComplexMatrix h = pauli(3);
  for (const auto& set : {pauli_set(), clifford_set()}) {
    const auto measured = randomized_coefficients(h, 1.0, 100, set);
    const auto predicted = predicted_coefficients(h, 1.0, 100, set);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK_THAT(measured.c[i], WithinAbs(predicted.c[i], 5e-4));
    CHECK_THAT(measured.c[0] + measured.c[1] + measured.c[2] + measured.c[3],
               WithinAbs(1.0, 1e-12));
  }
  const auto cliff = randomized_coefficients(h, 1.0, 100, clifford_set());
  CHECK_THAT(cliff.c[1], WithinAbs(cliff.c[2], 1e-12));
  CHECK_THAT(cliff.c[2], WithinAbs(cliff.c[3], 1e-12));
}

TEST_CASE("controllization error falls as 1/n") {
  Rng rng = make_rng(64);
  const ComplexMatrix h = random_bounded_hamiltonian(2, rng);
  std::vector<std::size_t> ns{8, 16, 32, 64, 128};
  std::vector<double> errs;
  for (std::size_t n : ns)
    errs.push_back(randomized_controllization(h, 1.0, n, pauli_set()).error);
  CHECK_THAT(loglog_slope(ns, errs), WithinAbs(-1.0, 0.15));
  for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] < errs[i - 1]);
}

TEST_CASE("controllization phase tends to Tr H t / d") {
  Rng rng = make_rng(65);
  const ComplexMatrix h = random_bounded_hamiltonian(2, rng) + 0.4 * identity(2);
  const double t = 0.8;
  const auto r = randomized_controllization(h, t, 512, pauli_set());
  CHECK_THAT(r.phase, WithinAbs(h.trace().real() / 2.0 * t, 1e-2));
  const auto ideal = ideal_controlled_evolution(h, t);
  CHECK(validate_channel(ideal).cp);
}

TEST_CASE("sampled mode is reproducible and near the average") {
  const ComplexMatrix h = pauli(1) * 0.5 + pauli(3) * 0.3;
  RandomizationOptions a;
  a.mode = RandomizationMode::sampled;
  a.trials = 600;
  a.seed = 3;
  RandomizationOptions b = a;
  b.threads = 3;
  const auto ra = randomized_controllization(h, 1.0, 16, pauli_set(), a);
  const auto rb = randomized_controllization(h, 1.0, 16, pauli_set(), b);
  CHECK(choi_max_diff(ra.choi, rb.choi) == 0.0);
  const auto avg = randomized_controllization(h, 1.0, 16, pauli_set());
  CHECK(choi_max_diff(ra.choi, avg.choi) < 0.1);
}

TEST_CASE("Clifford randomization is not better than Pauli") {
  Rng rng = make_rng(66);
  const ComplexMatrix h = random_bounded_hamiltonian(2, rng);
  const auto rep = pauli_vs_clifford(h, 1.0, {16, 32});
  CHECK(rep.clifford_not_better);
  CHECK(rep.s0_difference < 1e-9);
  CHECK(max_abs_diff(rep.s0_pauli, pauli_s0()) < 1e-9);
  for (const auto& row : rep.rows) CHECK(row.c0_clifford < row.c0_pauli);
}

TEST_CASE("loglog slope of an exact power law") {
  CHECK_THAT(loglog_slope({1, 2, 4, 8}, {1.0, 0.25, 0.0625, 0.015625}),
             WithinAbs(-2.0, 1e-12));
}

TEST_CASE("bounded random Hamiltonians") {
  Rng rng = make_rng(67);
  for (int s = 0; s < 20; ++s) {
    const ComplexMatrix h = random_bounded_hamiltonian(3, rng);
    const double nrm = schatten_norm(h, kInfinity);
    CHECK(nrm >= 0.3 - 1e-12);
    CHECK(nrm <= 1.0 + 1e-12);
  }
}
