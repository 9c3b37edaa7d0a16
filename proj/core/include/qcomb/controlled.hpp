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
#include <cstdint>
#include <optional>
#include <vector>

#include "qcomb/channel.hpp"

namespace qcomb {

// K expanded against an orthogonal Kraus basis of a channel:
// k = sum_i beta_i basis_i.
struct CoherenceOperator {
  ComplexMatrix k;
  std::vector<Complex> beta;
  KrausSet basis;
  double span_residual = 0.0;

  double beta_norm_sq() const;
  // Tr K^dag K
  double hs_norm_sq() const;
};

// Expands k against the orthogonal Kraus operators of a. Throws
// InvalidCoherenceError when k is outside the span or sum |beta|^2 > 1.
CoherenceOperator make_coherence_operator(const ChoiMatrix& a,
                                          const ComplexMatrix& k);

// Choi operator on (control_in, target_in) (x) (control_out, target_out);
// identity on control |0>, the channel on control |1>.
struct ControlledChannel {
  ChoiMatrix choi;
  CoherenceOperator coherence;
  double theta = 0.0;
  // Set when the |0> branch is a channel other than the identity.
  std::optional<CoherenceOperator> zero_branch;

  std::size_t target_dim() const { return choi.d_in / 2; }
};

// Builds |00><00| (x) ja + |11><11| (x) jb + |00><11| (x) |k>><<l| + h.c.
// with the control pair written first, then reorders into channel order.
ComplexMatrix controlled_block_choi(const ComplexMatrix& ja,
                                    const ComplexMatrix& jb,
                                    const ComplexVector& k_vec,
                                    const ComplexVector& l_vec, std::size_t d);

// Off-diagonal control block <00|.|11> (a d^2 x d^2 matrix) of a controlled
// Choi operator in channel order.
ComplexMatrix coherence_block(const ChoiMatrix& cc);
// Diagonal control blocks <00|.|00> and <11|.|11>.
ComplexMatrix control_block(const ChoiMatrix& cc, int c);
// K recovered from the off-diagonal block |I>><<K|.
ComplexMatrix extract_coherence_operator(const ChoiMatrix& cc);

ControlledChannel classical_controlled(const ChoiMatrix& a);
ControlledChannel controlled_with_K(const ChoiMatrix& a, const ComplexMatrix& k,
                                    double theta = 0.0);
// |0><0| (x) I + e^{i theta} |1><1| (x) U.
ControlledChannel controlled_unitary(const ComplexMatrix& u, double theta = 0.0);
// Wraps a controlled Choi operator after checking its blocks.
ControlledChannel controlled_from_choi(const ChoiMatrix& cc,
                                       const ChoiMatrix& a);

double coherence_norm(const ControlledChannel& cc, double p);
// 2^{1/p} sqrt(d) sqrt(Tr K^dag K)
double predicted_coherence_norm(const ControlledChannel& cc, double p);

struct MostCoherentOptions {
  // Coefficients over the maximal-norm family, normalized internally.
  std::optional<std::vector<Complex>> alpha;
  // Selects the member of the maximal-norm family with the largest overlap
  // with this operator.
  std::optional<ComplexMatrix> anchor;
};

CoherenceOperator most_coherent_K(const ChoiMatrix& a,
                                  const MostCoherentOptions& opts = {});

struct AxiomsReport {
  bool control_preserved = false;
  bool zero_branch_identity = false;
  bool one_branch_action = false;
  double control_residual = 0.0;
  double zero_branch_residual = 0.0;
  double one_branch_residual = 0.0;
  bool ok() const {
    return control_preserved && zero_branch_identity && one_branch_action;
  }
};

AxiomsReport axioms_check(const ChoiMatrix& cc, const ChoiMatrix& a);

ControlledChannel controlled_two(const ChoiMatrix& a, const ComplexMatrix& k,
                                 const ChoiMatrix& b, const ComplexMatrix& l);

// Switch of two qubit channels with Kraus {K_i} and {L_j}:
// W_ij = |0><0| (x) L_j K_i + |1><1| (x) K_i L_j.
ChoiMatrix quantum_switch_choi(const KrausSet& a, const KrausSet& b);
// Closed form for the switch of A with itself, A = {alpha_i sigma_i}.
ChoiMatrix switch_action_pauli(const std::array<double, 4>& alpha);
// Coherence block of the switch by brute force over Kraus pairs.
ComplexMatrix switch_offdiag_bruteforce(const std::array<double, 4>& alpha);

struct SwitchComparison {
  bool match_single = false;
  bool match_concat = false;
  double residual_single = 0.0;
  double residual_concat = 0.0;
  double residual = 0.0;
  bool match() const { return match_single || match_concat; }
};

SwitchComparison switch_vs_controlled(const std::array<double, 4>& alpha,
                                      unsigned restarts = 64,
                                      std::uint64_t seed = 1);

// Pauli weights of A o A for A = {alpha_i sigma_i}.
std::array<double, 4> concatenated_alpha(const std::array<double, 4>& alpha);

struct BilinearFit {
  double residual = 0.0;
  ComplexVector beta;
  ComplexVector gamma;
};

// min || m - diag(w) beta gamma^dag diag(w) ||_F over ||beta||, ||gamma|| <= 1
// by alternating trust-region steps from several random starts.
BilinearFit fit_rank_one_bounded(const ComplexMatrix& m, const RealVector& w,
                                 unsigned restarts, std::uint64_t seed);

// min || I/2 - |K>><<L| ||_2 over coherence operators K, L of the qubit
// depolarizing channel.
double identity_depolarizing_gap(unsigned restarts = 64, std::uint64_t seed = 1);

}  // namespace qcomb
