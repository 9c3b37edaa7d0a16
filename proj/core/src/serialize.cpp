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

#include "qcomb/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcomb/errors.hpp"

namespace qcomb {

namespace {

using Idx = Eigen::Index;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw FormatError(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<double> number_array(const Json& j, const char* key, std::size_t n) {
  const Json& v = field(j, key);
  if (!v.is_array() || v.size() != n) {
    std::ostringstream os;
    os << "field '" << key << "' must be an array of " << n << " numbers";
    throw FormatError(os.str());
  }
  std::vector<double> out;
  out.reserve(n);
  for (const auto& x : v) {
    if (!x.is_number()) throw FormatError(std::string("non-numeric entry in '") + key + "'");
    const double d = x.get<double>();
    if (!std::isfinite(d)) throw FormatError("matrix entries must be finite");
    out.push_back(d);
  }
  return out;
}

std::vector<std::size_t> dims_of(const Json& j) {
  const Json& v = field(j, "dims");
  if (!v.is_array()) throw FormatError("'dims' must be an array");
  std::vector<std::size_t> dims;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() <= 0)
      throw FormatError("'dims' entries must be positive integers");
    dims.push_back(x.get<std::size_t>());
  }
  return dims;
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Idx r = 0; r < m.rows(); ++r)
    for (Idx c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::size_t rows = size_field(j, "rows");
  const std::size_t cols = size_field(j, "cols");
  if (rows == 0 || cols == 0) throw FormatError("matrix must be non-empty");
  const auto re = number_array(j, "re", rows * cols);
  const auto im = number_array(j, "im", rows * cols);
  ComplexMatrix m(static_cast<Idx>(rows), static_cast<Idx>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Idx>(r), static_cast<Idx>(c)) =
          Complex(re[r * cols + c], im[r * cols + c]);
  return m;
}

Json to_json(const ComplexVector& v) { return to_json(ComplexMatrix(v)); }

ComplexVector vector_from_json(const Json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  if (m.cols() != 1) throw FormatError("expected a column vector");
  return m.col(0);
}

Json to_json(const ChoiMatrix& c) {
  return Json{{"d_in", c.d_in}, {"d_out", c.d_out}, {"choi", to_json(c.matrix)}};
}

Json to_json(const KrausSet& k) {
  Json ops = Json::array();
  for (const auto& op : k.operators) ops.push_back(to_json(op));
  return Json{{"d_in", k.d_in}, {"d_out", k.d_out}, {"kraus", ops}};
}

Json to_json(const ControlledChannel& cc) {
  Json j = to_json(cc.choi);
  j["coherence_k"] = to_json(cc.coherence.k);
  j["theta"] = cc.theta;
  return j;
}

Json to_json(const CombChoi& c) {
  return Json{{"dims", c.shape.dims()}, {"choi", to_json(c.matrix)}};
}

Json to_json(const CombKraus& k) {
  Json ops = Json::array();
  for (const auto& op : k.operators) ops.push_back(to_json(op));
  return Json{{"dims", k.shape.dims()}, {"kraus", ops}};
}

bool is_comb_json(const Json& j) { return j.is_object() && j.contains("dims"); }

ChannelData channel_from_json(const Json& j) {
  const std::size_t d_in = size_field(j, "d_in");
  const std::size_t d_out = size_field(j, "d_out");
  try {
    if (j.contains("kraus")) {
      const Json& arr = j.at("kraus");
      if (!arr.is_array() || arr.empty())
        throw FormatError("'kraus' must be a non-empty array");
      std::vector<ComplexMatrix> ops;
      for (const auto& m : arr) ops.push_back(matrix_from_json(m));
      KrausSet k(std::move(ops), d_in, d_out);
      ChannelData data{kraus_to_choi(k), k};
      return data;
    }
    return ChannelData{ChoiMatrix(matrix_from_json(field(j, "choi")), d_in, d_out),
                       std::nullopt};
  } catch (const DimensionError& e) {
    throw FormatError(e.what());
  }
}

CombData comb_from_json(const Json& j) {
  try {
    CombData data{CombShape(dims_of(j)), std::nullopt, std::nullopt};
    if (j.contains("kraus")) {
      const Json& arr = j.at("kraus");
      if (!arr.is_array() || arr.empty())
        throw FormatError("'kraus' must be a non-empty array");
      std::vector<ComplexMatrix> ops;
      for (const auto& m : arr) ops.push_back(matrix_from_json(m));
      data.kraus = CombKraus(std::move(ops), data.shape);
    } else {
      data.choi = CombChoi(matrix_from_json(field(j, "choi")), data.shape);
    }
    return data;
  } catch (const DimensionError& e) {
    throw FormatError(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace qcomb
