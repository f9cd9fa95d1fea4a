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
#include <random>

#include "hardylab/error.hpp"
#include "hardylab/factorization.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

BoundaryFunction modulus_of(std::size_t n, const std::function<Complex(Complex)>& fn) {
  return BoundaryFunction::sample(n, [&](Complex t) { return Complex(std::abs(fn(t)), 0.0); });
}

double log_mean(const BoundaryFunction& w) {
  double acc = 0.0;
  for (const auto& v : w.samples()) acc += std::log(v.real());
  return acc / static_cast<double>(w.size());
}

}  // namespace

TEST_CASE("outer function of a constant modulus") {
  const auto o = outer_from_modulus(BoundaryFunction::constant(64, 2.5));
  for (const auto& v : o.boundary().samples()) CHECK(std::abs(v - 2.5) < 1e-14);
}

TEST_CASE("outer function with modulus |1+t|") {
  const std::size_t n = 4096;
  const auto w = modulus_of(n, [](Complex t) { return 1.0 + t; });
  const auto o = outer_from_modulus(w);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(std::abs(o[k]) - w[k].real()) <= 1e-8);
  // prod_k (1 + t_k) = 2 on the midpoint grid, so the quadrature of
  // log|1+t| is log(2)/N rather than 0.
  const Complex m = mean_value(o);
  CHECK(std::abs(m.imag()) < 1e-12);
  CHECK(std::abs(m.real() - std::exp(std::log(2.0) / n)) < 1e-8);
  CHECK(std::abs(m.real() - std::exp(log_mean(w))) < 1e-8);
}

TEST_CASE("outer mean of |1+t| tends to 1 on a fine grid") {
  const std::size_t n = std::size_t{1} << 20;
  const auto o = outer_from_modulus(modulus_of(n, [](Complex t) { return 1.0 + t; }));
  CHECK(std::abs(mean_value(o) - 1.0) < 1e-6);
}

TEST_CASE("outer function with a kinked modulus") {
  const std::size_t n = 4096;
  const auto w = modulus_of(n, [](Complex t) { return std::min(std::abs(1.0 + t), 1.0); });
  const auto o = outer_from_modulus(w);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(std::abs(o[k]) - w[k].real()) <= 1e-6);
  CHECK(o.tolerance() < 1e-5);
}

TEST_CASE("outer functions reject negative or complex moduli") {
  CHECK_THROWS_AS(outer_from_modulus(BoundaryFunction::constant(8, -1.0)), Error);
  CHECK_THROWS_AS(outer_from_modulus(BoundaryFunction::constant(8, Complex(1, 1))), Error);
}

TEST_CASE("outer mean identity and multiplicativity on smooth moduli") {
  const std::size_t n = 1024;
  auto w1 = BoundaryFunction::sample(n, [](Complex t) { return std::exp(std::cos(std::arg(t))); });
  auto w2 = BoundaryFunction::sample(n, [](Complex t) { return 1.5 + std::sin(3 * std::arg(t)); });
  const auto o1 = outer_from_modulus(w1), o2 = outer_from_modulus(w2);
  CHECK(std::abs(mean_value(o1) - std::exp(log_mean(w1))) < 1e-8);
  CHECK(std::abs(mean_value(o2) - std::exp(log_mean(w2))) < 1e-8);
  const auto o12 = outer_from_modulus(w1 * w2);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(o12[k] - o1[k] * o2[k]) < 1e-8);
}

TEST_CASE("Blaschke products") {
  CHECK(std::abs(blaschke_eval({{0.0}}, Complex(0.3, 0.2)) - Complex(0.3, 0.2)) < 1e-15);
  CHECK(std::abs(blaschke_eval({{0.5}}, 0.5)) < 1e-15);
  CHECK(std::abs(blaschke_eval({{0.5}}, 0.0) - 0.5) < 1e-15);
  CHECK_THROWS_AS(blaschke_eval({{Complex(1.0 - 1e-7, 0.0)}}, 0.0), Error);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto zeros = oracle::random_zeros(rng, 1 + trial % 50, 0.95);
    BlaschkeSpec spec{zeros};
    for (std::size_t k = 0; k < 256; ++k) {
      const Complex t = oracle::node(k, 256);
      const Complex b = blaschke_eval(spec, t);
      CHECK(std::abs(std::abs(b) - 1.0) <= 1e-10);
      CHECK(std::abs(b - oracle::blaschke(zeros, t)) <= 1e-10);
      CHECK(std::abs(blaschke_eval(spec, 0.9 * t)) < 1.0);
    }
    CHECK(std::abs(blaschke_eval(spec, zeros[0])) < 1e-12);
  }
}

TEST_CASE("atomic singular factors") {
  CHECK(std::abs(singular_eval({}, Complex(0.2, 0.1)) - 1.0) < 1e-15);
  CHECK(std::abs(singular_eval({{{1.0, 0.7}}}, 0.0) - std::exp(-0.7)) < 1e-15);
  for (double r : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
    CHECK(std::abs(singular_eval({{{1.0, 1.0}}}, r) - std::exp((r + 1) / (r - 1))) < 1e-14);
  }
  const SingularAtomSpec two{{{Complex(0, 1), 0.3}, {Complex(-1, 0), 0.5}}};
  CHECK(std::abs(singular_eval(two, 0.0) - std::exp(-0.8)) < 1e-14);
  CHECK(std::abs(singular_eval(two, Complex(0.5, 0.5))) <= 1.0);
  CHECK_THROWS_AS(singular_eval(two, Complex(1.0, 0.0)), Error);
  CHECK_THROWS_AS(singular_eval({{{Complex(0.5, 0), 1.0}}}, 0.0), Error);
  CHECK_THROWS_AS(singular_eval({{{Complex(1, 0), -1.0}}}, 0.0), Error);
}

TEST_CASE("synthesis from factors") {
  const std::size_t n = 512;
  const auto zero_log = BoundaryFunction::constant(n, 0.0);
  const auto one = synthesize({{}, {}, zero_log, 0.0});
  for (const auto& v : one.boundary().samples()) CHECK(std::abs(v - 1.0) < 1e-14);

  const auto id = synthesize({{{0.0}}, {}, zero_log, 0.0});
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(id[k] - oracle::node(k, n)) < 1e-14);

  const auto logmod = BoundaryFunction::sample(n, [](Complex t) { return std::log(std::abs(1.0 + t)); });
  const auto f = synthesize({{{0.5}}, {}, logmod, 0.3});
  for (std::size_t k = 0; k < n; ++k)
    CHECK(std::abs(std::abs(f[k]) - std::abs(1.0 + oracle::node(k, n))) < 1e-6);

  // A singular atom away from the grid support of the kink.
  const auto g = synthesize({{}, {{{Complex(0, 1), 0.05}}}, zero_log, 0.0}, 0.1);
  CHECK(std::abs(mean_value(g) - std::exp(-0.05)) < 1e-8);
}

TEST_CASE("inner-outer split") {
  const std::size_t n = 1024;
  const auto smooth = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [](Complex t) { return 2.0 + t; }));
  const auto a = inner_outer_split(smooth);
  const Complex c0 = a.inner[0];
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(a.inner[k] - c0) < 1e-4);
    CHECK(std::abs(a.inner[k] * a.outer[k] - smooth[k]) <= 4e-16 * std::abs(smooth[k]));
  }
  CHECK(std::abs(std::abs(c0) - 1.0) < 1e-12);

  // Boundary zero: the modulus stays exact, only the phase near t = -1 is off.
  const auto edge = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [](Complex t) { return 1.0 + t; }));
  const auto b = inner_outer_split(edge);
  CHECK(b.unimodularity_error < 1e-4);

  const auto tz = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [](Complex t) { return t * (2.0 + t); }));
  const auto c = inner_outer_split(tz);
  const Complex rot = c.inner[0] / oracle::blaschke({0.0}, oracle::node(0, n));
  for (std::size_t k = 0; k < n; ++k) {
    const Complex t = oracle::node(k, n);
    CHECK(std::abs(c.inner[k] - rot * oracle::blaschke({0.0}, t)) < 1e-4);
    CHECK(std::abs(std::abs(c.outer[k]) - std::abs(2.0 + t)) < 1e-12);
  }

  const auto cst = AnalyticBoundaryFunction(BoundaryFunction::constant(n, Complex(-3, 4)));
  const auto d = inner_outer_split(cst);
  CHECK(std::abs(d.inner[5] - Complex(-0.6, 0.8)) < 1e-14);
  CHECK(std::abs(d.outer[5] - 5.0) < 1e-14);
}

TEST_CASE("Schur class checks and rotation to a positive origin value") {
  const std::size_t n = 256;
  const auto id = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [](Complex t) { return t; }));
  CHECK(schur_check(id).pass);
  const auto twice = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [](Complex t) { return 2.0 * t; }));
  CHECK_FALSE(schur_check(twice).pass);
  CHECK(schur_check(twice).margin < 0.0);

  std::mt19937_64 rng(23);
  const auto zeros = oracle::random_zeros(rng, 12, 0.8);
  const auto b = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [&](Complex t) { return oracle::blaschke(zeros, t); }),
                                          1e-6);
  CHECK(schur_check(b, 1e-6).pass);

  const auto half_i = AnalyticBoundaryFunction(BoundaryFunction::constant(n, Complex(0, 0.5)));
  CHECK(std::abs(make_schur_positive(half_i)[0] - 0.5) < 1e-15);

  const auto s03 = AnalyticBoundaryFunction(BoundaryFunction::sample(n, [](Complex t) { return 0.3 + 0.5 * t; }));
  const auto r03 = make_schur_positive(s03);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(r03[k] - s03[k]) < 1e-15);

  const auto neg = AnalyticBoundaryFunction(
      BoundaryFunction::sample(n, [](Complex t) { return -oracle::blaschke({0.2}, t); }));
  CHECK(std::abs(mean_value(neg) + 0.2) < 1e-12);
  CHECK(std::abs(mean_value(make_schur_positive(neg)) - 0.2) < 1e-12);
  CHECK_THROWS_AS(make_schur_positive(id), Error);
}
