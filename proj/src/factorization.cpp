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

#include "hardylab/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardylab/error.hpp"

namespace hardy {
namespace {

AnalyticBoundaryFunction certify(BoundaryFunction f, const OuterOptions& opts) {
  return certify_analytic(std::move(f), opts.max_alias_defect, opts.defect_scale);
}

}  // namespace

AnalyticBoundaryFunction certify_analytic(BoundaryFunction f, double max_defect,
                                          double scale) {
  const Spectrum s = to_spectrum(f);
  double neg = 0.0, all = scale;
  for (int j = s.min_mode(); j <= s.max_mode(); ++j) {
    const double a = std::abs(s(j));
    all = std::max(all, a);
    if (j < 0) neg = std::max(neg, a);
  }
  const double defect = all == 0.0 ? 0.0 : neg / all;
  require(defect <= max_defect, ErrorCode::kNotAnalytic,
          "aliasing defect " + std::to_string(defect) +
              " exceeds the allowed maximum; refine the grid");
  // The constructor measures relative to max|c_j| alone, which can exceed the
  // scaled defect for nearly vanishing functions.
  const double own = s.analyticity_defect();
  return AnalyticBoundaryFunction(
      std::move(f), std::max({AnalyticBoundaryFunction::kDefaultTolerance, defect, own}));
}

void BlaschkeSpec::validate() const {
  for (const Complex& a : zeros) {
    require(std::isfinite(a.real()) && std::isfinite(a.imag()) &&
                std::abs(a) <= 1.0 - kZeroMargin,
            ErrorCode::kDomain, "Blaschke zero too close to the unit circle");
  }
}

void SingularAtomSpec::validate() const {
  for (const SingularAtom& a : atoms) {
    require(std::abs(std::abs(a.point) - 1.0) <= 1e-12, ErrorCode::kDomain,
            "singular atom must sit on the unit circle");
    require(a.mass > 0.0 && std::isfinite(a.mass), ErrorCode::kDomain,
            "singular atom mass must be positive");
  }
}

AnalyticBoundaryFunction outer_from_log_modulus(const BoundaryFunction& v,
                                                const OuterOptions& opts) {
  require(v.is_real(1e-12), ErrorCode::kNotReal, "log-modulus must be real");
  const BoundaryFunction hv = conjugate(v);
  std::vector<Complex> out(v.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = std::exp(Complex(v[k].real(), hv[k].real()));
  return certify(BoundaryFunction(std::move(out)), opts);
}

AnalyticBoundaryFunction outer_from_modulus(const BoundaryFunction& w,
                                            const OuterOptions& opts) {
  require(w.is_real(1e-12), ErrorCode::kNotReal, "modulus must be real");
  std::vector<Complex> logs(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = w[k].real();
    require(x >= 0.0, ErrorCode::kDomain, "modulus must be nonnegative");
    logs[k] = std::log(std::max(x, opts.log_floor));
  }
  return outer_from_log_modulus(BoundaryFunction(std::move(logs)), opts);
}

Complex blaschke_eval(const BlaschkeSpec& spec, Complex z) {
  spec.validate();
  require(std::abs(z) <= 1.0 + 1e-12, ErrorCode::kDomain,
          "Blaschke product evaluated outside the closed disk");
  Complex acc = 1.0;
  for (const Complex& a : spec.zeros) {
    const double r = std::abs(a);
    if (r == 0.0) {
      acc *= z;
    } else {
      acc *= (std::conj(a) / r) * (a - z) / (1.0 - z * std::conj(a));
    }
  }
  return acc;
}

std::vector<Complex> blaschke_eval(const BlaschkeSpec& spec,
                                   std::span<const Complex> points) {
  std::vector<Complex> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) out[k] = blaschke_eval(spec, points[k]);
  return out;
}

Complex singular_eval(const SingularAtomSpec& spec, Complex z) {
  spec.validate();
  require(std::abs(z) <= 1.0 - kZeroMargin, ErrorCode::kDomain,
          "singular factor evaluated too close to the unit circle");
  Complex exponent = 0.0;
  for (const SingularAtom& a : spec.atoms)
    exponent += a.mass * (z + a.point) / (z - a.point);
  return std::exp(exponent);
}

std::vector<Complex> singular_eval(const SingularAtomSpec& spec,
                                   std::span<const Complex> points) {
  std::vector<Complex> out(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) out[k] = singular_eval(spec, points[k]);
  return out;
}

AnalyticBoundaryFunction synthesize(const FactoredFunction& f, double singular_gap,
                                    const OuterOptions& opts) {
  f.blaschke.validate();
  f.singular.validate();
  require(singular_gap >= kZeroMargin && singular_gap < 1.0, ErrorCode::kInvalidArgument,
          "singular_gap must lie in [1e-6, 1)");
  const std::size_t n = f.log_modulus.size();
  const AnalyticBoundaryFunction outer = outer_from_log_modulus(f.log_modulus, opts);
  const Complex rot = std::polar(1.0, f.phase);
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex t = BoundaryFunction::node(k, n);
    Complex v = rot * outer[k] * blaschke_eval(f.blaschke, t);
    if (!f.singular.atoms.empty()) v *= singular_eval(f.singular, (1.0 - singular_gap) * t);
    out[k] = v;
  }
  return certify(BoundaryFunction(std::move(out)), opts);
}

InnerOuter inner_outer_split(const AnalyticBoundaryFunction& f,
                             double inner_tolerance, const OuterOptions& opts) {
  const std::vector<double> mod = f.boundary().modulus();
  AnalyticBoundaryFunction outer =
      outer_from_modulus(BoundaryFunction::from_real(mod), opts);
  std::vector<Complex> in(f.size());
  double err = 0.0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    in[k] = f[k] / outer[k];
    err = std::max(err, std::abs(std::abs(in[k]) - 1.0));
  }
  require(err <= inner_tolerance, ErrorCode::kDegenerate,
          "inner factor is not unimodular to tolerance (zeros near the grid?): " +
              std::to_string(err));
  return InnerOuter{certify(BoundaryFunction(std::move(in)), opts), std::move(outer), err};
}

SchurCheck schur_check(const AnalyticBoundaryFunction& s, double analytic_tolerance) {
  double m = 0.0;
  for (const Complex& v : s.boundary().samples()) m = std::max(m, std::abs(v));
  const double margin = (1.0 + 1e-9) - m;
  return SchurCheck{margin >= 0.0 && s.defect() <= analytic_tolerance, m, margin,
                    s.defect()};
}

AnalyticBoundaryFunction make_schur_positive(const AnalyticBoundaryFunction& s) {
  const Complex s0 = mean_value(s);
  double scale = 0.0;
  for (const Complex& c : s.spectrum().coefficients()) scale = std::max(scale, std::abs(c));
  require(std::abs(s0) > 1e-12 * scale, ErrorCode::kDegenerate,
          "s(0) = 0: no rotation makes the value at the origin positive");
  const Complex rot = std::conj(s0) / std::abs(s0);
  return AnalyticBoundaryFunction(rot * s.boundary(), s.tolerance());
}

}  // namespace hardy
