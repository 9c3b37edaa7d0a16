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

#include <filesystem>
#include <fstream>

#include "qcomb/channel.hpp"
#include "qcomb/comb.hpp"
#include "qcomb/controlled.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/serialize.hpp"
#include "support.hpp"

using namespace qcomb;

TEST_CASE("matrix JSON round trip") {
  Rng rng = make_rng(71);
  const ComplexMatrix m = ginibre(3, 2, rng);
  CHECK(max_abs_diff(matrix_from_json(to_json(m)), m) == 0.0);
  const ComplexVector v = random_unit_vector(5, rng);
  CHECK(max_abs_diff(vector_from_json(to_json(v)), v) == 0.0);
}

TEST_CASE("channel JSON round trip") {
  Rng rng = make_rng(72);
  const KrausSet k(random_kraus(2, 3, 2, rng));
  const ChannelData from_kraus = channel_from_json(to_json(k));
  REQUIRE(from_kraus.kraus.has_value());
  CHECK(choi_max_diff(from_kraus.choi, kraus_to_choi(k)) < 1e-14);
  const ChannelData from_choi = channel_from_json(to_json(kraus_to_choi(k)));
  CHECK_FALSE(from_choi.kraus.has_value());
  CHECK(from_choi.choi.d_out == 3);
  const Json cc = to_json(controlled_unitary(pauli(1), 0.25));
  CHECK(cc.contains("coherence_k"));
  CHECK(cc["theta"].get<double>() == 0.25);
}

TEST_CASE("comb JSON round trip") {
  const CombKraus k = random_circuit_comb(1, 2, 2, 1);
  const Json j = to_json(k);
  CHECK(is_comb_json(j));
  const CombData d = comb_from_json(j);
  REQUIRE(d.kraus.has_value());
  CHECK(d.shape == k.shape);
  const CombData c = comb_from_json(to_json(kraus_to_comb_choi(k)));
  REQUIRE(c.choi.has_value());
  CHECK(check_comb_choi(*c.choi).valid);
}

TEST_CASE("malformed JSON is a format error") {
  CHECK_THROWS_AS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"re", {1, 2}}}),
                  FormatError);
  CHECK_THROWS_AS(matrix_from_json(Json::array()), FormatError);
  Json bad = to_json(identity_choi(2));
  bad["d_in"] = 3;
  CHECK_THROWS_AS(channel_from_json(bad), FormatError);
  CHECK_THROWS_AS(comb_from_json(Json{{"dims", {2, 2, 2}}, {"choi", to_json(identity(8))}}),
                  FormatError);
}

TEST_CASE("JSON files") {
  const auto path = std::filesystem::temp_directory_path() / "qcomb_serialize_test.json";
  write_json_file(path.string(), to_json(identity(2)));
  CHECK(max_abs_diff(matrix_from_json(read_json_file(path.string())), identity(2)) == 0.0);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file(path.string()), FormatError);
  std::filesystem::remove(path);
  CHECK_THROWS(read_json_file(path.string()));
}
