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

// Config-driven experiment runner behind the C API. The config schema is
// documented in README.md.

#ifndef HARDYLAB_SRC_EXPERIMENTS_HPP
#define HARDYLAB_SRC_EXPERIMENTS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/corpus.hpp"
#include "hardylab/interp.hpp"
#include "hardylab/wiener.hpp"
#include "json_io.hpp"

namespace hardy {

struct RealFunction {
  std::string id;
  BoundaryFunction u;
};

struct ExperimentConfig {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::size_t n = 0;
  std::string format = "json";
  std::vector<NamedFunction> corpus;
  std::vector<RealFunction> real_corpus;
  std::optional<SchurCorpusOptions> schur;
  std::vector<double> lambda_grid, q_grid, p_grid, theta_grid, t_grid;
  SimConfig sim;
  RegressionOptions regression;
  std::string mode = "bound";  // bound | phase | both
  std::size_t phase_paths = 10000;
  std::size_t jones_steps = 0;
  std::string checkpoint = "none";  // none | binary | csv
  Json echo;  // effective config, written into the report
};

/// Parses and validates; builds the circle corpora. command may be empty when
/// the config names it; a mismatch is an error. Throws Error (kParse for
/// malformed input, the validator's code otherwise).
ExperimentConfig parse_experiment_config(const std::string& text, const std::string& command,
                                         std::optional<std::uint64_t> seed_override);

struct CheckRow {
  std::string section;
  std::string subject;
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double stderr_ = 0.0;
  bool pass = false;
};

struct ExperimentReport {
  std::string command;
  bool pass = false;
  Json json;
  std::string csv;
  std::string summary;
  std::vector<CheckRow> checks;
  std::shared_ptr<const PathEnsemble> checkpoint_source;
  std::string checkpoint_format;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes <command>.<format>, <command>_summary.txt and the optional
/// checkpoint into dir (created if needed), each atomically. Returns the
/// paths written.
std::vector<std::string> write_report(const ExperimentReport& report, const std::string& dir,
                                      const std::string& format);

}  // namespace hardy

#endif  // HARDYLAB_SRC_EXPERIMENTS_HPP
