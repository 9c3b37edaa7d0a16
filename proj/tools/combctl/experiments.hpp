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
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcomb/tensor.hpp"

namespace combctl {

using Json = nlohmann::json;

// Bad configuration or command line; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  std::size_t d = 2;
  double t = 1.0;
  std::vector<std::size_t> n_list;
  std::size_t seeds = 20;
  std::uint64_t seed = 7;
  std::string set = "pauli";
  std::string mode = "average";
  std::size_t trials = 10000;
  std::string method = "multicopy";
  std::array<double, 4> alpha{0.5, 0.5, 0.5, 0.5};
  std::optional<bool> expect_match;
  unsigned restarts = 64;
  std::size_t slots = 1;
  std::size_t instances = 50;
  std::optional<qcomb::ComplexMatrix> hamiltonian;
  std::optional<double> tolerance;
  unsigned threads = 1;
};

// Parses a config object; unknown keys and out-of-budget values throw UsageError.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);
// Fills experiment-specific defaults (n_list, tolerance) and checks budgets.
void finalize(ExperimentConfig& c);

struct Report {
  Json json;
  // n,error,phase,set,mode,seed rows; empty when the experiment has no CSV.
  std::vector<std::string> csv_rows;
  bool pass = false;
};

inline constexpr const char* kCsvHeader = "n,error,phase,set,mode,seed";

Report run(const ExperimentConfig& config);

struct ValidateResult {
  Json json;
  bool pass = false;
};

// Channel or comb file; throws qcomb::FormatError on malformed input.
ValidateResult validate_file(const std::string& path);

struct FixtureParams {
  std::size_t d = 2;
  std::size_t slots = 1;
  std::size_t kraus = 2;
  std::uint64_t seed = 7;
  std::string state = "mixed";
};

inline const std::vector<std::string> kFixtureKinds{
    "haar-unitary", "random-cptp",   "antisym-state",      "pauli-set",
    "clifford-set", "identity-comb", "neutralization-comb"};

Json emit_fixture(const std::string& kind, const FixtureParams& params);

}  // namespace combctl
