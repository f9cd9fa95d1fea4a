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

#include "hardylab/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hardylab/error.hpp"
#include "hardylab/factorization.hpp"

namespace hardy {
namespace {

std::string tag(const char* kind, std::size_t i) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s-%04zu", kind, i);
  return buf;
}

}  // namespace

AnalyticBoundaryFunction polynomial(std::size_t n, const std::vector<Complex>& c) {
  require(!c.empty(), ErrorCode::kInvalidArgument, "polynomial needs coefficients");
  require(c.size() <= n / 2, ErrorCode::kInvalidArgument, "polynomial degree exceeds the grid");
  return AnalyticBoundaryFunction(BoundaryFunction::sample(n, [&](Complex t) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }));
}

AnalyticBoundaryFunction exponential(std::size_t n, Complex c) {
  return AnalyticBoundaryFunction(
      BoundaryFunction::sample(n, [c](Complex t) { return std::exp(c * t); }));
}

AnalyticBoundaryFunction power_singularity(std::size_t n, double a) {
  require(a > 0.0 && a < 1.0, ErrorCode::kInvalidArgument, "power singularity needs 0 < a < 1");
  return riesz_project(
      BoundaryFunction::sample(n, [a](Complex t) { return std::pow(1.0 - t, -a); }));
}

BoundaryFunction trigonometric(std::size_t n, double c0, const std::vector<double>& cs,
                               const std::vector<double>& sn) {
  require(std::max(cs.size(), sn.size()) < n / 2, ErrorCode::kInvalidArgument,
          "trigonometric degree exceeds the grid");
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = BoundaryFunction::node_angle(k, n);
    double acc = c0;
    for (std::size_t j = 0; j < cs.size(); ++j) acc += cs[j] * std::cos((j + 1.0) * th);
    for (std::size_t j = 0; j < sn.size(); ++j) acc += sn[j] * std::sin((j + 1.0) * th);
    v[k] = acc;
  }
  return BoundaryFunction::from_real(v);
}

std::vector<NamedFunction> schur_corpus(const SchurCorpusOptions& o) {
  require(o.count > 0 && o.max_zeros > 0 && o.max_radius > 0.0 &&
              o.max_radius < 1.0 - kZeroMargin,
          ErrorCode::kInvalidArgument, "bad Schur corpus options");
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double two_pi = 2.0 * std::numbers::pi;

  auto blaschke = [&]() {
    BlaschkeSpec spec;
    const std::size_t m = 1 + static_cast<std::size_t>(u(rng) * o.max_zeros) % o.max_zeros;
    for (std::size_t j = 0; j < m; ++j) {
      // radius in [0.05, max_radius]; keeps s(0) away from 0
      const double r = 0.05 + (o.max_radius - 0.05) * std::sqrt(u(rng));
      spec.zeros.push_back(std::polar(r, two_pi * u(rng)));
    }
    return BoundaryFunction::sample(o.n, [&](Complex t) { return blaschke_eval(spec, t); });
  };
  auto outer = [&]() {
    // log-modulus -sum_j a_j (1 + cos(j theta + phi_j)) <= 0
    const std::size_t deg = 1 + static_cast<std::size_t>(u(rng) * 6) % 6;
    std::vector<double> a(deg), phi(deg);
    for (std::size_t j = 0; j < deg; ++j) {
      a[j] = 1.5 * u(rng) / static_cast<double>(deg);
      phi[j] = two_pi * u(rng);
    }
    std::vector<double> v(o.n);
    for (std::size_t k = 0; k < o.n; ++k) {
      const double th = BoundaryFunction::node_angle(k, o.n);
      for (std::size_t j = 0; j < deg; ++j) v[k] -= a[j] * (1.0 + std::cos((j + 1.0) * th + phi[j]));
    }
    return outer_from_log_modulus(BoundaryFunction::from_real(v)).boundary();
  };

  std::vector<NamedFunction> out;
  out.reserve(o.count);
  for (std::size_t i = 0; i < o.count; ++i) {
    BoundaryFunction s = BoundaryFunction::constant(o.n, 1.0);
    const char* kind = "product";
    switch (i % 3) {
      case 0:
        s = blaschke();
        kind = "blaschke";
        break;
      case 1:
        s = outer();
        kind = "outer";
        break;
      default:
        s = blaschke() * outer();
        break;
    }
    out.push_back({tag(kind, i), make_schur_positive(certify_analytic(s, 1e-6, 1.0))});
  }
  return out;
}

AnalyticBoundaryFunction normalize_l2(const AnalyticBoundaryFunction& f, double* scale) {
  const double nrm = norm_p(f.boundary(), 2.0);
  require(nrm > 0.0, ErrorCode::kDegenerate, "cannot normalize the zero function");
  if (scale) *scale = 1.0 / nrm;
  return AnalyticBoundaryFunction((1.0 / nrm) * f.boundary(), f.tolerance());
}

std::vector<NamedFunction> embedded_corpus(std::size_t n) {
  std::vector<NamedFunction> out;
  out.push_back({"square", normalize_l2(polynomial(n, {1.0, 2.0, 1.0}))});
  out.push_back({"linear", normalize_l2(polynomial(n, {1.0, 1.0}))});
  out.push_back({"exp", normalize_l2(exponential(n, 1.0))});
  out.push_back({"cubic", normalize_l2(polynomial(n, {2.0, 0.0, 0.0, 1.0}))});
  return out;
}

}  // namespace hardy
