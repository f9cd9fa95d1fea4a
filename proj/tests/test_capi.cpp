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

// Exercises the shared library through hardylab.h only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hardylab.h"

namespace {

using nlohmann::json;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hardylab_capi_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

struct Report {
  hl_report* r = nullptr;
  ~Report() { hl_report_destroy(r); }
};

json run_json(const std::string& config, hl_status expect = HL_OK) {
  Report rep;
  const hl_status s = hl_run(nullptr, config.c_str(), nullptr, &rep.r);
  INFO(hl_last_error());
  REQUIRE(s == expect);
  return s == HL_OK ? json::parse(hl_report_json(rep.r)) : json();
}

}  // namespace

TEST_CASE("status strings and null handling") {
  CHECK(std::strlen(hl_version()) > 0);
  CHECK(std::string(hl_status_string(HL_E_PARSE)) == "parse error");
  hl_function* f = nullptr;
  CHECK(hl_function_create(8, nullptr, nullptr, &f) == HL_E_NULL);
  CHECK(hl_run(nullptr, nullptr, nullptr, nullptr) == HL_E_NULL);
  CHECK(hl_function_size(nullptr) == 0);
  CHECK(hl_report_passed(nullptr) == 0);
  hl_function_destroy(nullptr);
  hl_report_destroy(nullptr);
}

TEST_CASE("function round trips are bit exact") {
  const std::size_t n = 16;
  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = std::sin(0.1 + k) / 3.0;
    im[k] = std::exp(-static_cast<double>(k)) * 1e-7;
  }
  hl_function* f = nullptr;
  REQUIRE(hl_function_create(n, re.data(), im.data(), &f) == HL_OK);
  CHECK(hl_function_size(f) == n);

  char* text = nullptr;
  REQUIRE(hl_function_to_json(f, &text) == HL_OK);
  const json j = json::parse(text);
  CHECK(j["n"] == n);
  hl_function* g = nullptr;
  REQUIRE(hl_function_from_json(text, &g) == HL_OK);
  hl_string_free(text);
  std::vector<double> re2(n), im2(n);
  REQUIRE(hl_function_samples(g, re2.data(), im2.data()) == HL_OK);
  CHECK(std::memcmp(re.data(), re2.data(), n * sizeof(double)) == 0);
  CHECK(std::memcmp(im.data(), im2.data(), n * sizeof(double)) == 0);

  REQUIRE(hl_function_to_csv(f, &text) == HL_OK);
  CHECK(std::string(text).rfind("k,re,im\n0,", 0) == 0);
  hl_string_free(text);
  hl_function_destroy(g);
  hl_function_destroy(f);

  CHECK(hl_function_from_json("{\"n\": 8, \"re\": [1, 2]}", &g) == HL_E_SIZE_MISMATCH);
  CHECK(hl_function_from_json("{\"n\": 8,", &g) == HL_E_PARSE);
  CHECK(std::strlen(hl_last_error()) > 0);
  CHECK(hl_function_create(12, re.data(), nullptr, &g) == HL_E_INVALID_ARGUMENT);
}

TEST_CASE("conjugate and norms through the C interface") {
  const std::size_t n = 64;
  std::vector<double> re(n), out_re(n), out_im(n);
  for (std::size_t k = 0; k < n; ++k) re[k] = std::cos(3.0 * 2.0 * std::numbers::pi * (k + 0.5) / n);
  hl_function* f = nullptr;
  REQUIRE(hl_function_create(n, re.data(), nullptr, &f) == HL_OK);
  hl_function* h = nullptr;
  REQUIRE(hl_function_conjugate(f, &h) == HL_OK);
  REQUIRE(hl_function_samples(h, out_re.data(), out_im.data()) == HL_OK);
  for (std::size_t k = 0; k < n; ++k)
    CHECK(std::abs(out_re[k] - std::sin(3.0 * 2.0 * std::numbers::pi * (k + 0.5) / n)) < 1e-12);
  double nrm = 0.0;
  REQUIRE(hl_function_norm(f, 2.0, &nrm) == HL_OK);
  CHECK(nrm == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
  REQUIRE(hl_function_norm(f, INFINITY, &nrm) == HL_OK);
  CHECK(nrm <= 1.0);

  std::vector<double> im(n, 0.5);
  hl_function* c = nullptr;
  REQUIRE(hl_function_create(n, re.data(), im.data(), &c) == HL_OK);
  hl_function* bad = nullptr;
  CHECK(hl_function_conjugate(c, &bad) == HL_E_NOT_REAL);
  hl_function* p = nullptr;
  REQUIRE(hl_function_riesz_project(c, &p) == HL_OK);
  hl_function_destroy(p);
  hl_function_destroy(c);
  hl_function_destroy(h);
  hl_function_destroy(f);
}

TEST_CASE("ensembles and checkpoints") {
  hl_ensemble* e = nullptr;
  REQUIRE(hl_ensemble_sample(R"({"paths": 200, "seed": 5, "dt": 0.002})", &e) == HL_OK);
  CHECK(hl_ensemble_size(e) == 200);
  double re = 0, im = 0, t = 0;
  REQUIRE(hl_ensemble_exit(e, 17, &re, &im, &t) == HL_OK);
  CHECK(std::hypot(re, im) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t > 0.0);
  CHECK(hl_ensemble_exit(e, 200, &re, &im, &t) == HL_E_INVALID_ARGUMENT);

  const auto dir = scratch("ckpt");
  std::filesystem::create_directories(dir);
  const std::string bin = (dir / "inc.bin").string();
  REQUIRE(hl_ensemble_write_checkpoint(e, bin.c_str(), "binary") == HL_OK);
  double diff = -1.0;
  REQUIRE(hl_ensemble_compare_checkpoint(e, bin.c_str(), &diff) == HL_OK);
  CHECK(diff == 0.0);
  const std::string csv = (dir / "inc.csv").string();
  REQUIRE(hl_ensemble_write_checkpoint(e, csv.c_str(), "csv") == HL_OK);
  CHECK(slurp(csv).rfind("path,step,re,im\n", 0) == 0);
  CHECK(hl_ensemble_write_checkpoint(e, csv.c_str(), "xml") == HL_E_INVALID_ARGUMENT);
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  hl_ensemble_destroy(e);

  CHECK(hl_ensemble_sample(R"({"paths": 10, "dt": 0})", &e) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_ensemble_sample(R"({"paths": 10, "dtt": 0.1})", &e) == HL_E_PARSE);
}

TEST_CASE("lemma12 on the trivial Schur corpus") {
  const json r = run_json(R"({"command": "lemma12", "corpus": [
      {"id": "one", "family": "poly", "coefficients": [1]},
      {"id": "half", "family": "poly", "coefficients": [0.5]},
      {"id": "identity", "family": "poly", "coefficients": [0, 1]}]})");
  CHECK(r["pass"] == true);
  std::size_t seen = 0;
  for (const auto& row : r["rows"]) {
    const double q = row["q"];
    const double cq = q <= 2 ? 2.0 / std::sin(std::numbers::pi * (q - 1) / 2) : std::pow(2.0, q - 1);
    CHECK(row["op"] == "lemma12");
    if (row["corpus_id"] == "one") CHECK(row["ratio"] == 0.0);
    if (row["corpus_id"] == "half")
      CHECK(double(row["ratio"]) == doctest::Approx(std::pow(0.5, q) / (cq * 0.5)).epsilon(1e-12));
    if (row["corpus_id"] == "identity" && q == 2.0) {
      CHECK(std::abs(double(row["ratio"]) - 1.0) <= 1e-10);
      ++seen;
    }
  }
  CHECK(seen == 1);
  CHECK(r["rows"].size() == 12);
}

TEST_CASE("decompose CSV has a monotone f0 column") {
  Report rep;
  REQUIRE(hl_run("decompose", R"({"N": 1024, "p_grid": [2], "format": "csv",
      "lambda_grid": {"lo": -3, "hi": 3},
      "corpus": [{"id": "f", "family": "poly", "coefficients": [0.7071067811865476, 0.7071067811865476]}]})",
                 nullptr, &rep.r) == HL_OK);
  CHECK(std::string(hl_report_format(rep.r)) == "csv");
  std::istringstream csv(hl_report_csv(rep.r));
  std::string line;
  std::getline(csv, line);
  CHECK(line.rfind("function,p,lambda,f0_l1", 0) == 0);
  double last = INFINITY, last_lambda = 0.0;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    const double lambda = std::stod(cells[2]), f0 = std::stod(cells[3]);
    CHECK(lambda > last_lambda);
    CHECK(f0 <= last);
    last = f0;
    last_lambda = lambda;
    ++rows;
  }
  CHECK(rows == 7);
  CHECK(last == 0.0);  // lambda = 8 exceeds sup |f|
  CHECK(hl_report_passed(rep.r) == 1);
}

TEST_CASE("simulate is byte-reproducible") {
  const std::string cfg = R"({"command": "simulate", "seed": 21, "sim": {"paths": 400},
      "corpus": [{"id": "lin", "family": "poly", "coefficients": [0.7, 0.7]}],
      "real_corpus": [{"id": "c", "family": "trig", "cos": [1.0]}], "lambda_grid": [1.5]})";
  std::string first, second;
  for (std::string* dst : {&first, &second}) {
    Report rep;
    REQUIRE(hl_run(nullptr, cfg.c_str(), nullptr, &rep.r) == HL_OK);
    *dst = hl_report_json(rep.r);
  }
  CHECK(first == second);

  // Files written twice are identical, and the seed override changes them.
  const auto a = scratch("sim_a"), b = scratch("sim_b"), c = scratch("sim_c");
  for (const auto& dir : {a, b}) {
    Report rep;
    REQUIRE(hl_run(nullptr, cfg.c_str(), nullptr, &rep.r) == HL_OK);
    char* written = nullptr;
    REQUIRE(hl_report_write(rep.r, dir.string().c_str(), nullptr, &written) == HL_OK);
    CHECK(std::string(written).find("simulate.json") != std::string::npos);
    hl_string_free(written);
  }
  CHECK(slurp(a / "simulate.json") == slurp(b / "simulate.json"));
  CHECK(slurp(a / "simulate_summary.txt") == slurp(b / "simulate_summary.txt"));
  CHECK(slurp(a / "simulate.json") == first);

  const std::uint64_t other = 22;
  Report rep;
  REQUIRE(hl_run(nullptr, cfg.c_str(), &other, &rep.r) == HL_OK);
  REQUIRE(hl_report_write(rep.r, c.string().c_str(), "csv", nullptr) == HL_OK);
  CHECK(std::string(hl_report_json(rep.r)) != first);
  CHECK(json::parse(hl_report_json(rep.r))["config"]["seed"] == 22);
  CHECK(slurp(c / "simulate.csv").rfind("section,subject,check,lhs,rhs,stderr,pass\n", 0) == 0);
}

TEST_CASE("config validation") {
  CHECK(hl_config_validate(nullptr, R"({"command": "simulate"})", nullptr) == HL_E_INVALID_ARGUMENT);
  const std::uint64_t seed = 3;
  CHECK(hl_config_validate(nullptr, R"({"command": "simulate"})", &seed) == HL_OK);
  CHECK(hl_config_validate("kfunc", R"({"command": "simulate", "seed": 1})", nullptr) ==
        HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("kfunc", "{}", nullptr) == HL_OK);
  CHECK(hl_config_validate(nullptr, "{}", nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("kfunc", R"({"lambda_grid": []})", nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("kfunc", R"({"lambda_grd": [1]})", nullptr) == HL_E_PARSE);
  CHECK(hl_config_validate("decompose", R"({"p_grid": [1.0]})", nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("decompose", R"({"N": 100})", nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("decompose", R"({"format": "xml"})", nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("lemma12", "{}", nullptr) == HL_E_INVALID_ARGUMENT);  // generated corpus needs a seed
  CHECK(hl_config_validate("decompose", R"({"corpus": [{"family": "poly"}]})", nullptr) == HL_E_PARSE);
  CHECK(hl_config_validate("decompose", R"({"corpus": [{"family": "power_singularity", "a": 1.5}]})",
                           nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("interpolate", R"({"seed": 1, "mode": "fast"})", nullptr) ==
        HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("interpolate",
                           R"({"seed": 1, "N": 256, "corpus": [{"family": "power_singularity", "a": 0.3}]})",
                           nullptr) == HL_E_INVALID_ARGUMENT);
  CHECK(hl_config_validate("oracle", R"({"seed": 1, "sim": {"dt": 1.0}})", nullptr) ==
        HL_E_INVALID_ARGUMENT);
}
