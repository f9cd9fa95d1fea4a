// Copyright 2026 The hardylab Authors
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

// hardylab_cli [command] --config <path> [--out <dir>] [--seed <u64>]
//              [--format json|csv] [--quiet]
//
// Exit codes: 0 all checks pass, 1 a check failed or the run aborted,
// 2 invalid flags or config.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hardylab.h"

namespace {

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadConfig = 2;

int report_error(const char* stage, hl_status s) {
  std::cerr << "hardylab_cli: " << stage << ": " << hl_status_string(s) << ": " << hl_last_error()
            << "\n";
  return std::string(stage) == "config" ? kBadConfig : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardylab experiments: decompose, lemma12, kfunc, simulate, interpolate, oracle"};
  std::string command, config_path, out_dir = "out", format;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("command", command, "experiment to run (or the config's \"command\")")
      ->check(CLI::IsMember({"decompose", "lemma12", "kfunc", "simulate", "interpolate", "oracle"}));
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--format", format, "report format (default: the config's, else json)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--quiet", quiet, "no summary on stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kBadConfig;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "hardylab_cli: cannot read config " << config_path << "\n";
    return kBadConfig;
  }
  std::stringstream text;
  text << in.rdbuf();
  const std::string config = text.str();

  const char* cmd = command.empty() ? nullptr : command.c_str();
  const std::uint64_t* seed_ptr = seed ? &*seed : nullptr;
  if (const hl_status s = hl_config_validate(cmd, config.c_str(), seed_ptr); s != HL_OK)
    return report_error("config", s);

  hl_report* report = nullptr;
  if (const hl_status s = hl_run(cmd, config.c_str(), seed_ptr, &report); s != HL_OK)
    return report_error("run", s);

  char* written = nullptr;
  const hl_status ws =
      hl_report_write(report, out_dir.c_str(), format.empty() ? nullptr : format.c_str(), &written);
  if (ws != HL_OK) {
    hl_report_destroy(report);
    return report_error("write", ws);
  }
  if (!quiet) {
    std::cout << hl_report_summary(report);
    std::cout << "wrote:\n" << written;
  }
  hl_string_free(written);
  const int code = hl_report_passed(report) ? kPass : kCheckFailed;
  hl_report_destroy(report);
  return code;
}
