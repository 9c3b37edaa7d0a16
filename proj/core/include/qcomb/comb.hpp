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

#include "qcomb/channel.hpp"
#include "qcomb/controlled.hpp"

namespace qcomb {

// Factor dimensions [d_0, ..., d_{2N+1}] of an N-slot comb. Slot k maps
// H_{2k-1} to H_{2k}; the comb maps H_0 to H_{2N+1}.
class CombShape {
 public:
  CombShape() = default;
  explicit CombShape(std::vector<std::size_t> dims);
  // All factors of dimension d.
  static CombShape uniform(std::size_t slots, std::size_t d);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t slots() const { return dims_.size() / 2 - 1; }
  std::size_t factor_count() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_[i]; }
  SubsystemShape subsystems() const { return SubsystemShape(dims_); }
  std::size_t total() const;
  // Product of the slot factors H_1 ... H_{2N}.
  std::size_t in_dim() const;
  // d_0 * d_{2N+1}.
  std::size_t out_dim() const;
  bool identity_compatible() const;

  bool operator==(const CombShape&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

// Choi operator with factors in ascending order H_0, H_1, ..., H_{2N+1}.
struct CombChoi {
  ComplexMatrix matrix;
  CombShape shape;

  CombChoi() = default;
  CombChoi(ComplexMatrix m, CombShape s);
};

// Kraus operators S_i : H_1 (x) ... (x) H_{2N} -> H_0 (x) H_{2N+1}.
struct CombKraus {
  std::vector<ComplexMatrix> operators;
  CombShape shape;

  CombKraus() = default;
  CombKraus(std::vector<ComplexMatrix> ops, CombShape s);

  std::size_t size() const { return operators.size(); }
};

// A coherence operator of a comb, expanded against orthogonal Kraus operators.
struct CoherenceOperatorS {
  ComplexMatrix s;
  std::vector<Complex> beta;
  std::vector<ComplexMatrix> basis;
  double span_residual = 0.0;

  double beta_norm_sq() const;
  double hs_norm_sq() const { return s.squaredNorm(); }
};

// |S>> in ascending factor order for an operator S : in -> out.
ComplexVector comb_vector(const ComplexMatrix& s, const CombShape& shape);
ComplexMatrix comb_operator(const ComplexVector& v, const CombShape& shape);
// Reads a comb-ordered vector as an operator from the listed domain factors
// to the listed range factors (each list in the order used for flattening).
ComplexMatrix vector_as_operator(const ComplexVector& v, const CombShape& shape,
                                 const std::vector<std::size_t>& domain,
                                 const std::vector<std::size_t>& range);

// Reorders a vector (or matrix) whose factors are listed in `order` into
// ascending comb order.
ComplexVector to_comb_order(const ComplexVector& v, const CombShape& shape,
                            const std::vector<std::size_t>& order);
ComplexMatrix to_comb_order(const ComplexMatrix& m, const CombShape& shape,
                            const std::vector<std::size_t>& order);

CombChoi kraus_to_comb_choi(const CombKraus& k);
// Orthogonal Kraus operators from the spectral decomposition.
CombKraus comb_choi_to_kraus(const CombChoi& j);
// Orthogonal Kraus operators spanning the same comb as k, without forming the
// dense Choi operator.
CombKraus orthogonalize(const CombKraus& k);

struct CombReport {
  bool cp = false;
  double min_eigenvalue = 0.0;
  // chain[k] is the residual of the k-th condition, k = 0 ... N.
  std::vector<double> chain;
  // max |Tr_odd J - I_even|
  double normalization = 0.0;
  bool chain_ok = false;
  bool valid = false;
};

CombReport check_comb_choi(const CombChoi& j);

CombChoi identity_comb(const CombShape& shape);
CombKraus identity_comb_kraus(const CombShape& shape);
ComplexMatrix identity_comb_operator(const CombShape& shape);

// Output Choi operator on H_0 (x) H_{2N+1}.
ChoiMatrix link_apply(const CombChoi& comb, const std::vector<ChoiMatrix>& inputs);
ChoiMatrix link_apply(const CombKraus& comb, const std::vector<ChoiMatrix>& inputs);
// Unitary inputs: contracts each Kraus operator with (x)_k |U_k>>.
ChoiMatrix link_apply_unitaries(const CombKraus& comb,
                                const std::vector<ComplexMatrix>& unitaries);

CoherenceOperatorS make_coherence_operator_s(const CombKraus& comb,
                                             const ComplexMatrix& s);
CoherenceOperatorS make_coherence_operator_s(const CombChoi& comb,
                                             const ComplexMatrix& s);

struct MostCoherentSOptions {
  std::optional<std::vector<Complex>> alpha;
  // Anchor operator; the family member with the largest overlap is chosen.
  std::optional<ComplexMatrix> anchor;
};

CoherenceOperatorS most_coherent_S(const CombChoi& comb,
                                   const MostCoherentSOptions& opts = {});
CoherenceOperatorS most_coherent_S(const CombKraus& comb,
                                   const MostCoherentSOptions& opts = {});

// The anchor |I>>_{0,2N+1} (x)_k |I>>_{2k-1,2k} as an operator in -> out;
// picks the coherence operator under which the controlled identity channel
// stays the identity.
ComplexMatrix identity_anchor(const CombShape& shape);

// Shape with control factors merged into H_0 and H_{2N+1}.
CombShape controlled_shape(const CombShape& shape);

// |00><00| (x) J_S + |11><11| (x) J_T + |00><11| (x) |s>><<t| + h.c., control
// input merged in front of H_0 and control output in front of H_{2N+1}.
CombChoi controlled_comb_two(const CombChoi& comb_s, const ComplexMatrix& s,
                             const CombChoi& comb_t, const ComplexMatrix& t);
// Identity comb on control |0>, comb on control |1>.
CombChoi controlled_comb(const CombChoi& comb, const ComplexMatrix& s);

// Kraus form of controlled_comb_two, never building a dense Choi operator.
CombKraus controlled_comb_two_kraus(const CombKraus& comb_s,
                                    const ComplexMatrix& s,
                                    const CombKraus& comb_t,
                                    const ComplexMatrix& t);

struct CombKrausReport {
  // residual of the k-th reduced-comb condition, k = 0 ... N-1
  std::vector<double> conditions;
  double normalization = 0.0;
  bool valid = false;
};

CombKrausReport comb_kraus_conditions(const CombKraus& k);

// A valid comb built from a circuit: isometry H_0 -> H_1 (x) A, unitaries
// between the slots, and an environment traced out at the end.
CombKraus random_circuit_comb(std::size_t slots, std::size_t d, std::size_t aux,
                              std::uint64_t seed);

// Tr S^dag S values of the orthogonal Kraus operators, descending.
std::vector<double> kraus_norms(const CombKraus& k);

}  // namespace qcomb
