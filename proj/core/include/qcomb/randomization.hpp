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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qcomb/comb.hpp"
#include "qcomb/controlled.hpp"
#include "qcomb/random.hpp"

namespace qcomb {

struct RandomizationSet {
  std::string name;
  std::vector<ComplexMatrix> unitaries;

  std::size_t dim() const;
  std::size_t size() const { return unitaries.size(); }
};

// {I, X, Y, Z}
RandomizationSet pauli_set();
// The 24 single-qubit Cliffords V_sigma U_i, U_i in the Pauli set, up to phase.
RandomizationSet clifford_set();
// Clock and shift products X^a Z^b, a, b < d.
RandomizationSet generalized_pauli_set(std::size_t d);
RandomizationSet randomization_set(const std::string& name);

// The six coset representatives V_sigma.
std::vector<ComplexMatrix> clifford_representatives();

// True if every element maps each Pauli to a Pauli up to phase.
bool normalizes_paulis(const RandomizationSet& set);

// One-slot comb with Kraus operators |U_i>>_{01} |U_i^dag>>_{23} / sqrt|R|.
CombKraus randomization_comb(const RandomizationSet& set);

// Uncontrolled: (1/|R|) sum_i U_i^dag u U_i (.) U_i^dag u^dag U_i.
// Controlled: Kraus (1/sqrt|R|)(|0><0| (x) U_i^dag u U_i + |1><1| (x) u).
ChoiMatrix randomization_step_choi(const ComplexMatrix& u,
                                   const RandomizationSet& set, bool controlled);

enum class RandomizationMode { average, sampled };

struct RandomizationOptions {
  RandomizationMode mode = RandomizationMode::average;
  std::uint64_t seed = 1;
  std::size_t trials = 10000;
  // 0 uses std::thread::hardware_concurrency.
  unsigned threads = 1;
};

struct ControllizationResult {
  ChoiMatrix choi;
  // (1/2) ||J - J_ideal||_1 / (2d)
  double error = 0.0;
  // arg Tr[(e^{-iHt})^dag K]
  double phase = 0.0;
};

// Ideal target |0><0| (x) I + |1><1| (x) e^{i (Tr H/d) t} e^{-iHt}.
ChoiMatrix ideal_controlled_evolution(const ComplexMatrix& h, double t);

ControllizationResult randomized_controllization(const ComplexMatrix& h, double t,
                                                 std::size_t n,
                                                 const RandomizationSet& set,
                                                 const RandomizationOptions& opts = {});

// The n-step uncontrolled randomized channel for u = e^{-iHt/n}.
ChoiMatrix randomized_channel(const ComplexMatrix& h, double t, std::size_t n,
                              const RandomizationSet& set);

struct CoefficientRecord {
  enum class Order { exact, first, second };
  std::array<double, 4> c{};
  Order order = Order::exact;
};

// Pauli-diagonal coefficients of randomized_channel.
CoefficientRecord randomized_coefficients(const ComplexMatrix& h, double t,
                                          std::size_t n, const RandomizationSet& set);
// Closed forms through O(1/n^2); set.name must be "pauli" or "clifford".
CoefficientRecord predicted_coefficients(const ComplexMatrix& h, double t,
                                         std::size_t n, const RandomizationSet& set,
                                         CoefficientRecord::Order order =
                                             CoefficientRecord::Order::second);

struct PauliCliffordRow {
  std::size_t n = 0;
  double c0_pauli = 0.0;
  double c0_clifford = 0.0;
  double neutralization_error_pauli = 0.0;
  double neutralization_error_clifford = 0.0;
  double controlled_error_pauli = 0.0;
  double controlled_error_clifford = 0.0;
};

struct PauliCliffordReport {
  std::vector<PauliCliffordRow> rows;
  ComplexMatrix s0_pauli;
  ComplexMatrix s0_clifford;
  double s0_difference = 0.0;
  bool clifford_not_better = false;
};

PauliCliffordReport pauli_vs_clifford(const ComplexMatrix& h, double t,
                                      const std::vector<std::size_t>& n_list);

// (1/4) sum_i sigma_i (x) sigma_i read as the comb operator H_1 H_2 -> H_0 H_3.
ComplexMatrix pauli_s0();

// Least-squares slope of log(error) against log(n).
double loglog_slope(const std::vector<std::size_t>& ns,
                    const std::vector<double>& errors);

// Random d x d Hermitian matrix with operator norm in [0.3, 1].
ComplexMatrix random_bounded_hamiltonian(std::size_t d, Rng& rng);

}  // namespace qcomb
