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

#include <cstddef>
#include <optional>
#include <vector>

#include "qcomb/comb.hpp"
#include "qcomb/controlled.hpp"

namespace qcomb {

// Comb that prepares rho on the slot inputs H_1, H_3, ..., H_{2N-1}, discards
// the slot outputs and passes H_0 straight to H_{2N+1}:
// |I>><<I|_{0,2N+1} (x) rho (x) I_out.
CombChoi prepare_traceout_comb(const ComplexMatrix& rho, const CombShape& shape);
CombKraus prepare_traceout_kraus(const ComplexMatrix& rho, const CombShape& shape);

// |I>>_{0,2N+1} (x) |phi_in>_{odd} (x) |phi_out>_{even} as an operator in -> out.
ComplexMatrix neutralization_operator(const ComplexVector& phi_in,
                                      const ComplexVector& phi_out,
                                      const CombShape& shape);

// Controlled comb: the neutralization comb on control |0>, the identity comb
// on control |1>, coherence operator s0 on the neutralization side.
CombChoi controlled_neutralization(const CombChoi& neutral, const ComplexMatrix& s0);
CombKraus controlled_neutralization(const CombKraus& neutral,
                                    const ComplexMatrix& s0);

struct EigenstateResult {
  ControlledChannel controlled;
  // arg <psi|U|psi>
  double theta_u = 0.0;
  // max |output - controlled_unitary(U, -theta_u)|
  double residual = 0.0;
};

// One use of U with an eigenvector psi. The output is controlled-(e^{-i theta} U).
EigenstateResult eigenstate_controllization(const ComplexMatrix& u,
                                            const ComplexVector& psi);

// (1/sqrt(d!)) sum_sigma sgn(sigma) |sigma(1) ... sigma(d)>
ComplexVector antisym_state(std::size_t d);

struct MulticopyResult {
  ControlledChannel controlled;
  // max |output - controlled_unitary(v^d, -arg det v)|
  double residual = 0.0;
};

// d uses of v (d x d) through the antisymmetric neutralization comb. Output is
// controlled-(det(v)^{-1} v^d); for det v = 1 this is controlled-(v^d).
MulticopyResult multicopy_controllization(const ComplexMatrix& v);

struct InvariantSubspaceReport {
  // u^{(x) n} has an eigenvector whose eigenvalue mu satisfies mu^d = det(u)^n.
  bool exists = false;
  std::optional<ComplexVector> witness;
  double phase_residual = 0.0;
  // Dimension of the subspace fixed up to the phase det^{n/d} by every U(d)
  // element; nonzero only when d divides n.
  std::size_t group_invariant_dim = 0;
};

InvariantSubspaceReport invariant_subspace_check(const ComplexMatrix& u,
                                                 std::size_t n);

}  // namespace qcomb
