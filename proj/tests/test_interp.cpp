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

#include "hardylab/error.hpp"
#include "hardylab/interp.hpp"

using namespace hardy;

namespace {

PathEnsemble ensemble(std::size_t paths, std::uint64_t seed) {
  SimConfig c;
  c.paths = paths;
  c.seed = seed;
  return PathEnsemble::sample(c);
}

// (1 + t)^2 / sqrt(6): unit L^2 norm, sup norm 4 / sqrt(6).
AnalyticMartingale square_corpus() {
  const double s = 1.0 / std::sqrt(6.0);
  return AnalyticMartingale({s, 2 * s, s});
}

struct Built {
  StoppingDecomposition dec;
  TruncationFamily fam;
};

Built build(const Martingale& F, const PathEnsemble& e, int offset, bool phase) {
  Built b{stopping_decompose(F, e, 2.0), {}};
  b.fam = truncation_family(b.dec, offset);
  if (phase) {
    PhaseOptions opts;
    opts.regression.degree = 4;
    opts.regression.stride = 2;
    add_phases(b.fam, F, e, opts);
  }
  return b;
}

}  // namespace

TEST_CASE("interpolant of a constant") {
  const auto e = ensemble(500, 1);
  const AnalyticMartingale one({Complex(0.6, 0.8)});
  const auto b = build(one, e, 8, true);
  for (Complex z : {Complex(0.0, 0.0), Complex(0.5, 1.0), Complex(1.0, -2.0)}) {
    for (Complex g : interpolant_G(b.dec, b.fam, z)) CHECK(std::abs(g - Complex(0.6, 0.8)) < 1e-15);
  }
  for (double x : interpolant_bound(b.dec, b.fam, 0.0)) CHECK(x == doctest::Approx(1.0));
  const auto c = strip_bounds_report(b.dec, b.fam, 1, {InterpMode::kPhase});
  CHECK(c.pass());
  CHECK(c.theta.lhs == 0.0);
  CHECK(c.hinf.lhs == doctest::Approx(1.0));
}

TEST_CASE("midline interpolant telescopes to F when the family is trivial") {
  const auto e = ensemble(4000, 2);
  const auto F = square_corpus();
  const auto b = build(F, e, 8, true);
  const auto g = interpolant_G(b.dec, b.fam, 0.5);
  for (std::size_t p = 0; p < e.size(); ++p) CHECK(std::abs(g[p] - F.terminal(p, e)) < 1e-12);
  CHECK(b.fam.phased_levels.empty());
}

TEST_CASE("bound mode dominates phase mode path by path") {
  const auto e = ensemble(4000, 3);
  const auto F = square_corpus();
  const auto b = build(F, e, 0, true);
  REQUIRE(!b.fam.phased_levels.empty());
  for (double re : {0.0, 0.25, 0.5, 1.0}) {
    const auto bound = interpolant_bound(b.dec, b.fam, re);
    for (double t : {0.0, 1.0, -2.0}) {
      const auto g = interpolant_G(b.dec, b.fam, Complex(re, t));
      for (std::size_t p = 0; p < e.size(); ++p)
        CHECK(std::abs(g[p]) <= bound[p] * (1 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("pointwise oracle on the H-infinity line") {
  // With |w_j| = 1, |G(1)| <= |EF| + sum_{j reached} |d_j| M^{-1-j}
  // <= |EF| + 2 (1 + eta) * (levels reached).
  const auto e = ensemble(5000, 4);
  const auto F = square_corpus();
  const auto b = build(F, e, 8, false);
  const auto bound = interpolant_bound(b.dec, b.fam, 1.0);
  const double ef = std::abs(b.dec.mean);
  for (std::size_t p = 0; p < e.size(); ++p) {
    double reached = 0;
    for (std::size_t j = 0; j < b.dec.levels; ++j) reached += b.dec.reached(p, j);
    CHECK(bound[p] <= ef + 2 * (1 + b.dec.eta) * reached + 1e-12);
    CHECK(bound[p] <= ef + 4 * b.dec.M * (1 + b.dec.eta));
  }
}

TEST_CASE("certificate in bound mode") {
  const auto e = ensemble(5000, 5);
  const auto F = square_corpus();
  const auto b = build(F, e, 8, false);
  const auto c = strip_bounds_report(b.dec, b.fam, 5);
  CHECK(c.pass());
  CHECK(c.theta.lhs == 0.0);
  CHECK(c.requirement_pass);
  CHECK(c.hinf_short_chain_holds);
  CHECK(c.h1.lhs <= c.h1_chain);
  CHECK(c.constant_h1 == doctest::Approx(1 + 8 * (1 + c.eta) + 128 * (1 + c.eta) / 3.0));
  CHECK(c.constant_hinf ==
        doctest::Approx(std::abs(b.dec.mean) + 2 * (1 + c.eta) * (1 + 8 + 2)));
  // The bound drops the unimodular factors: identical values along each line.
  std::size_t h1 = 0, hinf = 0;
  for (const auto& l : c.lines) {
    if (l.line == "h1") {
      CHECK(l.value == c.h1.lhs);
      ++h1;
    }
    if (l.line == "hinf") {
      CHECK(l.value == c.hinf.lhs);
      ++hinf;
    }
  }
  CHECK(h1 == 7);
  CHECK(hinf == 7);
}

TEST_CASE("certificate replicates across seeds") {
  const auto F = square_corpus();
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const auto e = ensemble(3000, seed);
    const auto b = build(F, e, 8, false);
    const auto c = strip_bounds_report(b.dec, b.fam, seed);
    CAPTURE(seed);
    CHECK(c.pass());
    CHECK(c.h1.lhs_normalized <= c.constant_h1);
  }
}

TEST_CASE("certificate in phase mode") {
  const auto e = ensemble(4000, 6);
  const auto F = square_corpus();
  const auto b = build(F, e, 8, true);
  const auto c = strip_bounds_report(b.dec, b.fam, 6, {InterpMode::kPhase});
  CHECK(c.pass());
  CHECK(c.theta.lhs < 1e-12);

  // Offset 0 makes the family act; the phase-mode lines stay under the bounds.
  const auto b0 = build(F, e, 0, true);
  const auto c0 = strip_bounds_report(b0.dec, b0.fam, 6, {InterpMode::kPhase});
  CHECK(c0.h1.pass);
  CHECK(c0.hinf.pass);
  CHECK(c0.theta.lhs > 0.0);
}

TEST_CASE("certificate preconditions") {
  const auto e = ensemble(2000, 7);
  const AnalyticMartingale big({3.0, 1.0});
  const auto b = build(big, e, 8, false);
  try {
    strip_bounds_report(b.dec, b.fam, 7);
    FAIL("expected a normalization error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kDomain);
  }
  const auto n = build(square_corpus(), e, 8, false);
  CHECK_THROWS_AS(strip_bounds_report(n.dec, n.fam, 7, {InterpMode::kPhase}), Error);
  CHECK_THROWS_AS(interpolant_G(n.dec, n.fam, 0.5), Error);
}

TEST_CASE("Jones iteration with synthetic steps") {
  const std::vector<Complex> f = {1.0, Complex(0.0, 2.0), -1.0, 0.5};
  const auto exact = jones_iterate([](const std::vector<Complex>& r) { return JonesStep{r, 3.0}; },
                                   f, 10);
  CHECK(exact.exact);
  CHECK(exact.residual.size() == 2);
  CHECK(exact.converged());
  CHECK(exact.approximant == f);

  const auto half = jones_iterate(
      [](const std::vector<Complex>& r) {
        JonesStep s;
        for (Complex x : r) s.value.push_back(0.5 * x);
        s.norm = grid_l2(r);
        return s;
      },
      f, 12);
  CHECK(!half.violation);
  CHECK(half.geometric);
  CHECK(half.slope == doctest::Approx(-std::log(2.0)));
  CHECK(half.converged());
  CHECK(half.residual.back() == doctest::Approx(std::ldexp(grid_l2(f), -12)));

  const auto bad = jones_iterate(
      [](const std::vector<Complex>& r) {
        JonesStep s;
        for (Complex x : r) s.value.push_back(0.25 * x);
        s.norm = 1.0;
        return s;
      },
      f, 5);
  REQUIRE(bad.violation.has_value());
  CHECK(*bad.violation == 1);
  CHECK(bad.contract_ratio[0] == doctest::Approx(0.75));
  CHECK(!bad.converged());

  const auto zero = jones_iterate([](const std::vector<Complex>& r) { return JonesStep{r, 0.0}; },
                                  std::vector<Complex>(4, 0.0), 3);
  CHECK(zero.exact);
}

TEST_CASE("Jones iteration through Wiener space") {
  const auto e = ensemble(6000, 8);
  const std::size_t N = 16;
  std::vector<Complex> f(N);
  for (std::size_t k = 0; k < N; ++k) {
    const Complex t = BoundaryFunction::node(k, N);
    f[k] = (1.0 + t) * (1.0 + t) / std::sqrt(6.0);
  }
  PhaseOptions opts;
  opts.regression.degree = 4;
  opts.regression.stride = 2;
  const auto r = jones_iterate(wiener_one_step(e, 2.0, 8, opts), f, 4);
  CAPTURE(r.slope);
  CHECK(!r.violation);
  CHECK(r.geometric);
  CHECK(r.slope_pass);
  CHECK(r.norm_bound);
  for (double x : r.contract_ratio) CHECK(x <= 0.5);
}
