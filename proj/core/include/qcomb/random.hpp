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

#include <cstdint>
#include <random>
#include <vector>

#include "qcomb/tensor.hpp"

namespace qcomb {

using Rng = std::mt19937_64;

// splitmix64 finalizer over (seed, stream); used to give every trial or case
// its own generator independent of execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);
// Haar unitary rescaled by a phase so that det = 1.
ComplexMatrix haar_special_unitary(std::size_t d, Rng& rng);
// First `cols` columns of a Haar unitary of side `rows`.
ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);
ComplexVector random_unit_vector(std::size_t d, Rng& rng);
// Hilbert-Schmidt distributed density operator of full rank.
ComplexMatrix random_density(std::size_t d, Rng& rng);
ComplexMatrix random_hermitian(std::size_t d, Rng& rng);

// Kraus operators of a random CPTP map built from a Haar isometry
// H_in -> H_out (x) E with dim E = n_kraus.
std::vector<ComplexMatrix> random_kraus(std::size_t d_in, std::size_t d_out,
                                        std::size_t n_kraus, Rng& rng);

}  // namespace qcomb
