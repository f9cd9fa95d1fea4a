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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "hardylab/error.hpp"
#include "hardylab/io.hpp"

using namespace hardy;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(0);
}

BoundaryFunction awkward(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& x : v) x = {u(rng) * std::pow(10.0, 40 * u(rng)), u(rng) / 3.0};
  v[0] = {5e-324, -0.0};
  v[1] = {std::numeric_limits<double>::max(), 0.1};
  return BoundaryFunction(v);
}

bool same_bits(const BoundaryFunction& a, const BoundaryFunction& b) {
  return a.size() == b.size() &&
         std::memcmp(a.samples().data(), b.samples().data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("boundary function JSON and CSV keep every bit") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto f = awkward(32, seed);
    CHECK(same_bits(boundary_from_json(to_json(f)), f));
    CHECK(same_bits(boundary_from_csv(to_csv(f)), f));
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("boundary function parse errors") {
  CHECK(code_of([] { boundary_from_json("{\"n\": 8, \"re\": [1"); }) == ErrorCode::kParse);
  CHECK(code_of([] { boundary_from_json("{\"n\": 8, \"re\": [1,2,3,4,5,6,7,8], \"x\": 1}"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { boundary_from_json("{\"n\": 8, \"re\": [1,2]}"); }) == ErrorCode::kSizeMismatch);
  CHECK(code_of([] { boundary_from_json("{\"n\": 6, \"re\": [1,2,3,4,5,6]}"); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { boundary_from_csv("k,re,im\n0,1\n"); }) == ErrorCode::kParse);
  CHECK(code_of([] { boundary_from_csv("a,b,c\n"); }) == ErrorCode::kParse);
  // real-only JSON is accepted with zero imaginary part
  const auto r = boundary_from_json("{\"n\": 8, \"re\": [1,2,3,4,5,6,7,8]}");
  CHECK(r[7] == Complex(8.0, 0.0));
}

TEST_CASE("factored function JSON round trip") {
  std::vector<double> lm(16);
  for (std::size_t k = 0; k < lm.size(); ++k) lm[k] = -0.1 * std::cos(0.3 * k + 0.2);
  const FactoredFunction f{{{{0.3, -0.1}, {-0.55, 0.25}, {0.0, 0.0}}},
                           {{{{std::cos(1.0), std::sin(1.0)}, 0.75}}},
                           BoundaryFunction::from_real(lm),
                           2.0 / 3.0};

  const auto g = factored_from_json(to_json(f));
  REQUIRE(g.blaschke.zeros.size() == 3);
  CHECK(g.blaschke.zeros[1] == f.blaschke.zeros[1]);
  REQUIRE(g.singular.atoms.size() == 1);
  CHECK(g.singular.atoms[0].point == f.singular.atoms[0].point);
  CHECK(g.singular.atoms[0].mass == 0.75);
  CHECK(same_bits(g.log_modulus, f.log_modulus));
  CHECK(g.phase == f.phase);
  CHECK(to_json(g) == to_json(f));

  const std::string lm_json = to_json(f.log_modulus);
  CHECK(code_of([&] {
          factored_from_json("{\"zeros\": [[1.5, 0]], \"log_modulus\": " + lm_json + "}");
        }) == ErrorCode::kDomain);
  CHECK(code_of([&] {
          factored_from_json("{\"zeros\": [[0.5]], \"log_modulus\": " + lm_json + "}");
        }) == ErrorCode::kParse);
  CHECK(code_of([&] {
          factored_from_json("{\"atoms\": [[1, 0, -1]], \"log_modulus\": " + lm_json + "}");
        }) != static_cast<ErrorCode>(0));
}

TEST_CASE("sim config JSON round trip and defaults") {
  SimConfig c;
  c.paths = 1234;
  c.dt = 1.0 / 3000.0;
  c.t_max = 7.5;
  c.seed = 0xfedcba9876543210ULL;
  c.M = 3.0;
  c.offset = 5;
  c.regression_degree = 4;
  const auto d = sim_config_from_json(to_json(c));
  CHECK(d.paths == c.paths);
  CHECK(d.dt == c.dt);
  CHECK(d.t_max == c.t_max);
  CHECK(d.seed == c.seed);
  CHECK(d.M == c.M);
  CHECK(d.offset == c.offset);
  CHECK(d.regression_degree == c.regression_degree);

  const auto e = sim_config_from_json("{\"paths\": 10}");
  CHECK(e.paths == 10);
  CHECK(e.dt == SimConfig{}.dt);
  CHECK(code_of([] { sim_config_from_json("{\"path\": 10}"); }) == ErrorCode::kParse);
  CHECK(code_of([] { sim_config_from_json("{\"paths\": -1}"); }) != static_cast<ErrorCode>(0));
  CHECK(code_of([] { sim_config_from_json("{\"dt\": 0}"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("atomic writes replace the target and leave no temporaries") {
  const auto dir = std::filesystem::temp_directory_path() / "hardylab_io_atomic";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.txt").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second\n");
  CHECK(read_file(path) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  CHECK(code_of([&] { write_file_atomic((dir / "missing" / "x").string(), "x"); }) == ErrorCode::kIo);
  CHECK(code_of([&] { read_file((dir / "nope").string()); }) == ErrorCode::kIo);
  std::filesystem::remove_all(dir);
}
