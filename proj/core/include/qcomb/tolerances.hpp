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

namespace qcomb::tol {

inline constexpr double kHermiticity = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kPsdFloor = -1e-9;
inline constexpr double kChoiEquality = 1e-10;
inline constexpr double kTracePreserving = 1e-9;
inline constexpr double kSpanResidual = 1e-9;
inline constexpr double kNormBound = 1e-9;
inline constexpr double kComb = 1e-9;
inline constexpr double kEigenvector = 1e-9;
inline constexpr double kSwitchMatch = 1e-6;

// Largest dense matrix side the library will allocate for a comb.
inline constexpr std::size_t kMaxDenseSide = 4096;

}  // namespace qcomb::tol
