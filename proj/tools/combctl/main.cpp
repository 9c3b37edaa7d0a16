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

// combctl: experiment runner, file validator and fixture writer.
//
// Exit status: 0 all verdicts pass, 1 a verdict or numerical check failed,
// 2 usage or parse error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "qcomb/errors.hpp"
#include "qcomb/serialize.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string csv_path(const std::string& out) {
  const auto dot = out.find_last_of('.');
  const auto slash = out.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return out.substr(0, dot) + ".csv";
  return out + ".csv";
}

std::optional<unsigned> env_threads() {
  const char* v = std::getenv("COMBCTL_THREADS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024)
    throw combctl::UsageError("COMBCTL_THREADS must be an integer in [1, 1024]");
  return static_cast<unsigned>(n);
}

void emit(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    qcomb::write_json_file(out, j);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combctl: controlled operations and quantum comb experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment and write its report");
  std::string experiment, config_path, out, set, mode;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  run->add_option("--experiment", experiment,
                  "exact-controllization | scaling | coefficients | "
                  "switch-compare | comb-audit");
  run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  run->add_option("--out", out, "report path (JSON); CSV goes next to it");
  run->add_option("--seed", seed, "base seed");
  run->add_option("--set", set, "randomization set")
      ->check(CLI::IsMember({"pauli", "clifford"}));
  run->add_option("--mode", mode, "average or sampled")
      ->check(CLI::IsMember({"average", "sampled"}));
  run->add_flag("--timing", timing, "include wall time in the report");

  auto* validate = app.add_subcommand("validate", "check a channel or comb file");
  std::string validate_path, validate_out;
  validate->add_option("path", validate_path, "channel or comb JSON")->required();
  validate->add_option("--out", validate_out, "write the report here");

  auto* fixture = app.add_subcommand("fixture", "write a seeded fixture file");
  std::string kind, fixture_out;
  combctl::FixtureParams params;
  fixture->add_option("kind", kind, "fixture kind")
      ->required()
      ->check(CLI::IsMember(combctl::kFixtureKinds));
  fixture->add_option("--out", fixture_out, "output path (stdout if omitted)");
  fixture->add_option("--d", params.d, "dimension");
  fixture->add_option("--slots", params.slots, "comb slots");
  fixture->add_option("--kraus", params.kraus, "Kraus operator count");
  fixture->add_option("--seed", params.seed, "seed");
  fixture->add_option("--state", params.state, "neutralization state")
      ->check(CLI::IsMember({"mixed", "antisym"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*run) {
      combctl::ExperimentConfig cfg;
      if (!config_path.empty()) {
        try {
          cfg = combctl::config_from_json(qcomb::read_json_file(config_path));
        } catch (const qcomb::FormatError& e) {
          throw combctl::UsageError(e.what());
        }
      }
      if (!experiment.empty()) cfg.experiment = experiment;
      if (seed) cfg.seed = *seed;
      if (!set.empty()) cfg.set = set;
      if (!mode.empty()) cfg.mode = mode;
      if (const auto cap = env_threads()) cfg.threads = *cap;

      const auto start = std::chrono::steady_clock::now();
      combctl::Report report = combctl::run(cfg);
      if (timing) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        report.json["wall_time_s"] = dt.count();
      }
      emit(report.json, out);
      if (!report.csv_rows.empty() && !out.empty()) {
        std::ofstream csv(csv_path(out));
        if (!csv) throw qcomb::Error("cannot write " + csv_path(out));
        csv << combctl::kCsvHeader << '\n';
        for (const auto& row : report.csv_rows) csv << row << '\n';
      }
      if (!report.pass) {
        for (const auto& row : report.json["rows"])
          if (row.contains("pass") && !row["pass"].get<bool>())
            std::cerr << "FAIL: " << row.dump() << '\n';
        std::cerr << report.json["experiment"].get<std::string>() << ": verdict FAIL\n";
        return kFail;
      }
      return kPass;
    }
    if (*validate) {
      const auto res = combctl::validate_file(validate_path);
      emit(res.json, validate_out);
      if (!validate_out.empty()) std::cout << res.json.dump(2) << '\n';
      return res.pass ? kPass : kFail;
    }
    emit(combctl::emit_fixture(kind, params), fixture_out);
    return kPass;
  } catch (const combctl::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const qcomb::FormatError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
