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

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qcomb/channel.hpp"
#include "qcomb/comb.hpp"
#include "qcomb/controlled.hpp"

namespace qcomb {

using Json = nlohmann::json;

// {"rows", "cols", "re", "im"} with entries in row-major order.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json to_json(const ChoiMatrix& c);
Json to_json(const KrausSet& k);
Json to_json(const ControlledChannel& cc);
Json to_json(const CombChoi& c);
Json to_json(const CombKraus& k);

struct ChannelData {
  ChoiMatrix choi;
  std::optional<KrausSet> kraus;
};

struct CombData {
  CombShape shape;
  std::optional<CombChoi> choi;
  std::optional<CombKraus> kraus;
};

bool is_comb_json(const Json& j);
ChannelData channel_from_json(const Json& j);
CombData comb_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qcomb
