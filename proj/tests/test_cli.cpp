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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "experiments.hpp"
#include "qcomb/serialize.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

int run_combctl(const std::string& args) {
  const std::string cmd = std::string(COMBCTL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "combctl_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing is strict") {
  CHECK_THROWS_AS(combctl::config_from_json({{"experiment", "scaling"}, {"bogus", 1}}),
                  combctl::UsageError);
  CHECK_THROWS_AS(combctl::config_from_json({{"d", "two"}}), combctl::UsageError);
  const auto c = combctl::config_from_json({{"experiment", "scaling"}, {"n_list", {4, 8}}});
  CHECK(c.n_list.size() == 2);
  const auto back = combctl::config_from_json(combctl::config_to_json(c));
  CHECK(back.n_list == c.n_list);
  CHECK(back.experiment == "scaling");
}

TEST_CASE("finalize fills defaults and checks budgets") {
  combctl::ExperimentConfig c;
  c.experiment = "scaling";
  combctl::finalize(c);
  CHECK_FALSE(c.n_list.empty());
  CHECK(c.tolerance.has_value());
  combctl::ExperimentConfig bad;
  bad.experiment = "exact-controllization";
  bad.d = 5;
  CHECK_THROWS_AS(combctl::finalize(bad), combctl::UsageError);
  combctl::ExperimentConfig unknown;
  unknown.experiment = "nope";
  CHECK_THROWS_AS(combctl::finalize(unknown), combctl::UsageError);
}

TEST_CASE("experiments run in process") {
  combctl::ExperimentConfig c;
  c.experiment = "exact-controllization";
  c.seeds = 3;
  const auto r = combctl::run(c);
  CHECK(r.pass);
  CHECK(r.json["rows"].size() == 3);

  combctl::ExperimentConfig s;
  s.experiment = "switch-compare";
  s.alpha = {std::sqrt(0.7), std::sqrt(0.3), 0.0, 0.0};
  s.expect_match = false;
  CHECK(combctl::run(s).pass);
  s.expect_match = true;
  CHECK_FALSE(combctl::run(s).pass);
}

TEST_CASE("reports are deterministic") {
  combctl::ExperimentConfig c;
  c.experiment = "scaling";
  c.n_list = {4, 8, 16};
  c.seeds = 2;
  CHECK(combctl::run(c).json.dump() == combctl::run(c).json.dump());
  CHECK(combctl::run(c).csv_rows.size() == 3);
}

TEST_CASE("combctl exit codes") {
  const auto out = scratch("switch.json");
  CHECK(run_combctl("run --experiment switch-compare --out " + out.string()) == 0);
  CHECK(fs::exists(out));
  CHECK(run_combctl("run --experiment no-such-thing") == 2);
  CHECK(run_combctl("run --experiment scaling --set bogus") == 2);
  CHECK(run_combctl("frobnicate") == 2);
  CHECK(run_combctl("--help") == 0);

  const auto cfg = scratch("fail.json");
  {
    std::ofstream f(cfg);
    f << R"({"experiment": "switch-compare", "alpha": [0.8366600265340756, 0.5477225575051661, 0, 0], "expect_match": true})";
  }
  CHECK(run_combctl("run --config " + cfg.string()) == 1);
  {
    std::ofstream f(cfg);
    f << R"({"experiment": "switch-compare", "colour": 3})";
  }
  CHECK(run_combctl("run --config " + cfg.string()) == 2);
  {
    std::ofstream f(cfg);
    f << "{ nope";
  }
  CHECK(run_combctl("run --config " + cfg.string()) == 2);
}

TEST_CASE("combctl writes CSV next to the report") {
  const auto out = scratch("scaling.json");
  const auto cfg = scratch("scaling_cfg.json");
  {
    std::ofstream f(cfg);
    f << R"({"experiment": "scaling", "n_list": [4, 8, 16], "seeds": 2})";
  }
  REQUIRE(run_combctl("run --config " + cfg.string() + " --out " + out.string()) == 0);
  const std::string csv = slurp(scratch("scaling.csv"));
  CHECK(csv.rfind(combctl::kCsvHeader, 0) == 0);
  const std::string first = slurp(out);
  REQUIRE(run_combctl("run --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(slurp(out) == first);
  const auto report = qcomb::read_json_file(out.string());
  CHECK(report["pass"].get<bool>());
  CHECK_FALSE(report.contains("wall_time_s"));
}

TEST_CASE("combctl fixtures validate") {
  for (const std::string kind : {"random-cptp", "identity-comb"}) {
    const auto path = scratch(kind + ".json");
    REQUIRE(run_combctl("fixture " + kind + " --out " + path.string()) == 0);
    CHECK(run_combctl("validate " + path.string()) == 0);
  }
  const auto bad = scratch("bad_channel.json");
  {
    qcomb::Json j = qcomb::to_json(qcomb::ChoiMatrix(qcomb::identity(4) / 4.0, 2, 2));
    qcomb::write_json_file(bad.string(), j);
  }
  CHECK(run_combctl("validate " + bad.string()) == 1);
  const auto garbage = scratch("garbage.json");
  {
    std::ofstream f(garbage);
    f << "[1, 2";
  }
  CHECK(run_combctl("validate " + garbage.string()) == 2);
}

TEST_CASE("COMBCTL_THREADS must be a positive integer") {
  const std::string base = std::string(COMBCTL_PATH) +
                           " run --experiment switch-compare >/dev/null 2>&1";
  const int ok = std::system(("COMBCTL_THREADS=2 " + base).c_str());
  CHECK(WEXITSTATUS(ok) == 0);
  const int bad = std::system(("COMBCTL_THREADS=zero " + base).c_str());
  CHECK(WEXITSTATUS(bad) == 2);
}

TEST_CASE("run examples") {
  combctl::ExperimentConfig e;
  e.experiment = "exact-controllization";
  e.d = 2;
  e.seeds = 20;
  const auto er = combctl::run(e);
  CHECK(er.pass);
  REQUIRE(er.json["rows"].size() == 20);
  for (const auto& row : er.json["rows"]) CHECK(row["pass"].get<bool>());
  CHECK(er.json["summary"]["max_residual"].get<double>() < 1e-10);

  combctl::ExperimentConfig s;
  s.experiment = "scaling";
  s.seed = 7;
  const auto sr = combctl::run(s);
  CHECK(sr.pass);
  CHECK_THAT(sr.json["summary"]["slope"].get<double>(), Catch::Matchers::WithinAbs(-1.0, 0.15));
  CHECK(sr.csv_rows.size() == 7);

  combctl::ExperimentConfig w;
  w.experiment = "switch-compare";
  const auto wr = combctl::run(w);
  CHECK(wr.json["summary"]["match"].get<bool>());
  CHECK(wr.json["summary"]["residual"].get<double>() < 1e-6);
}

TEST_CASE("validate examples") {
  const auto id = scratch("identity_channel.json");
  qcomb::write_json_file(id.string(), qcomb::to_json(qcomb::identity_choi(2)));
  CHECK(combctl::validate_file(id.string()).pass);

  combctl::FixtureParams p;
  p.slots = 2;
  const auto comb = scratch("identity_comb2.json");
  qcomb::write_json_file(comb.string(), combctl::emit_fixture("identity-comb", p));
  CHECK(combctl::validate_file(comb.string()).pass);

  qcomb::ComplexMatrix m = qcomb::identity_choi(2).matrix;
  m(1, 1) = -0.25;
  const auto bad = scratch("not_psd.json");
  qcomb::write_json_file(bad.string(), qcomb::to_json(qcomb::ChoiMatrix(m, 2, 2)));
  const auto res = combctl::validate_file(bad.string());
  CHECK_FALSE(res.pass);
  CHECK(res.json.dump().find("min_eigenvalue") != std::string::npos);
}

TEST_CASE("fixture examples") {
  combctl::FixtureParams p;
  const auto cliff = combctl::emit_fixture("clifford-set", p);
  REQUIRE(cliff.contains("unitaries"));
  CHECK(cliff["unitaries"].size() == 24);
  CHECK(combctl::emit_fixture("clifford-set", p) == cliff);
  p.d = 3;
  const auto a = qcomb::vector_from_json(combctl::emit_fixture("antisym-state", p)["state"]);
  CHECK(a.size() == 27);
  CHECK_THAT(a.norm(), Catch::Matchers::WithinAbs(1.0, 1e-14));
  p.d = 2;
  p.seed = 11;
  CHECK(combctl::emit_fixture("haar-unitary", p) == combctl::emit_fixture("haar-unitary", p));
}
