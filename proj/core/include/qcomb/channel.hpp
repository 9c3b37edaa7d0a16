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
#include <optional>
#include <vector>

#include "qcomb/tensor.hpp"

namespace qcomb {

// Kraus operators, each d_out x d_in.
struct KrausSet {
  std::vector<ComplexMatrix> operators;
  std::size_t d_in = 0;
  std::size_t d_out = 0;

  KrausSet() = default;
  KrausSet(std::vector<ComplexMatrix> ops, std::size_t d_in,
           std::size_t d_out);
  // Dimensions taken from the first operator.
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  std::size_t size() const { return operators.size(); }
  // max |sum K^dag K - I|
  double tp_residual() const;
  bool trace_preserving(double tol = 1e-9) const;
};

// Choi operator on H_in (x) H_out, input factor first.
struct ChoiMatrix {
  ComplexMatrix matrix;
  std::size_t d_in = 0;
  std::size_t d_out = 0;

  ChoiMatrix() = default;
  ChoiMatrix(ComplexMatrix m, std::size_t d_in, std::size_t d_out);

  SubsystemShape shape() const { return SubsystemShape{d_in, d_out}; }
};

// A channel value. The Choi operator is always present and is the identity
// used for equality; the Kraus set is kept when the channel was built from one.
class Channel {
 public:
  explicit Channel(KrausSet kraus);
  explicit Channel(ChoiMatrix choi);

  const ChoiMatrix& choi() const { return choi_; }
  std::size_t d_in() const { return choi_.d_in; }
  std::size_t d_out() const { return choi_.d_out; }
  bool has_kraus() const { return kraus_.has_value(); }
  // Stored Kraus set, or the orthogonal one derived from the Choi operator.
  KrausSet kraus() const;

 private:
  ChoiMatrix choi_;
  std::optional<KrausSet> kraus_;
};

struct ChannelReport {
  bool cp = false;
  bool tp = false;
  double min_eigenvalue = 0.0;
  double tp_residual = 0.0;
  double hermiticity_residual = 0.0;
};

struct PauliCoefficients {
  // c[alpha][beta] over {I, X, Y, Z}.
  std::array<std::array<Complex, 4>, 4> c{};

  ComplexMatrix as_matrix() const;
  ChoiMatrix reconstruct() const;
};

ChoiMatrix kraus_to_choi(const KrausSet& k);
KrausSet choi_to_orthogonal_kraus(const ChoiMatrix& j);
ChannelReport validate_channel(const ChoiMatrix& j);
ComplexMatrix apply_channel(const ChoiMatrix& j, const ComplexMatrix& rho);
ComplexMatrix apply_kraus(const KrausSet& k, const ComplexMatrix& rho);
// Choi operator of second o first.
ChoiMatrix compose(const ChoiMatrix& first, const ChoiMatrix& second);
// Unitary on H (x) aux with dim aux = n + 1 and aux index 0 unused by the
// Kraus operators.
ComplexMatrix stinespring(const KrausSet& k);
// Tr_aux[U (rho (x) |0><0|) U^dag] for a dilation from stinespring().
ChoiMatrix stinespring_reduced_choi(const ComplexMatrix& u, std::size_t d,
                                    std::size_t aux);
PauliCoefficients pauli_decompose(const ChoiMatrix& j);

ChoiMatrix identity_choi(std::size_t d);
ChoiMatrix unitary_choi(const ComplexMatrix& u);
// Choi operator of (first) (x) (second) acting on H_a (x) H_b.
ChoiMatrix tensor_channels(const ChoiMatrix& a, const ChoiMatrix& b);
ChoiMatrix pauli_channel_choi(const std::array<double, 4>& probabilities);
ChoiMatrix depolarizing_choi();

// Half the trace norm of the difference.
double choi_trace_distance(const ChoiMatrix& a, const ChoiMatrix& b);
double choi_max_diff(const ChoiMatrix& a, const ChoiMatrix& b);

}  // namespace qcomb
