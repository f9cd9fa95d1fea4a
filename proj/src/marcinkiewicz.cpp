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

#include "hardylab/marcinkiewicz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hardylab/error.hpp"

namespace hardy {
namespace {

double max_coefficient(const AnalyticBoundaryFunction& f) {
  double m = 0.0;
  for (const Complex& c : f.spectrum().coefficients()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

std::vector<bool> level_set(const BoundaryFunction& f, double lambda) {
  require(lambda > 0.0, ErrorCode::kInvalidArgument, "level_set requires lambda > 0");
  std::vector<bool> e(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) e[k] = std::abs(f[k]) >= lambda;
  return e;
}

DecompositionResult decompose(const AnalyticBoundaryFunction& input, double lambda,
                              double p, const DecomposeOptions& opts) {
  require(lambda > 0.0 && std::isfinite(lambda), ErrorCode::kInvalidArgument,
          "decompose requires lambda > 0");
  require(p >= 1.0, ErrorCode::kInvalidArgument, "decompose requires p >= 1");
  double scale = 1.0;
  if (opts.normalize) {
    const double norm = norm_p(input.boundary(), p);
    require(norm > 0.0, ErrorCode::kDegenerate, "cannot normalize the zero function");
    scale = 1.0 / norm;
  }
  AnalyticBoundaryFunction f =
      scale == 1.0 ? input
                   : AnalyticBoundaryFunction(scale * input.boundary(), input.tolerance());

  const std::size_t n = f.size();
  const std::vector<double> mod = f.boundary().modulus();
  require(*std::max_element(mod.begin(), mod.end()) >= opts.outer.log_floor,
          ErrorCode::kDegenerate, "|f| lies below the log floor at every node");

  std::vector<Complex> ratio(n);
  for (std::size_t k = 0; k < n; ++k)
    ratio[k] = mod[k] > lambda ? lambda / mod[k] : 1.0;
  // s is bounded by 1, so its aliasing is judged on that scale.
  OuterOptions sopts = opts.outer;
  sopts.defect_scale = std::max(sopts.defect_scale, 1.0);
  AnalyticBoundaryFunction s = outer_from_modulus(BoundaryFunction(std::move(ratio)), sopts);

  std::vector<Complex> v1(n), v0(n);
  for (std::size_t k = 0; k < n; ++k) {
    v1[k] = f[k] * s[k];
    v0[k] = f[k] - v1[k];
  }
  const double ref = max_coefficient(f);
  AnalyticBoundaryFunction f1 =
      certify_analytic(BoundaryFunction(std::move(v1)), opts.outer.max_alias_defect, ref);
  AnalyticBoundaryFunction f0 =
      certify_analytic(BoundaryFunction(std::move(v0)), opts.outer.max_alias_defect, ref);

  DecompositionNorms norms{norm_p(f0.boundary(), 1.0), norm_p(f1.boundary(), kInf),
                           norm_p(f.boundary(), p)};
  const double s0 = mean_value(s).real();
  return DecompositionResult{std::move(f), std::move(f1), std::move(f0), std::move(s),
                             lambda,       p,             scale,        s0,
                             norms};
}

SZeroTwoWays s_zero_two_ways(const DecompositionResult& r) {
  const std::size_t n = r.f.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double m = std::abs(r.f[k]);
    if (m >= r.lambda) acc += std::log(m / r.lambda);
  }
  const double formula = std::exp(-acc / static_cast<double>(n));
  const double direct = mean_value(r.s).real();
  return SZeroTwoWays{direct, formula, std::abs(direct - formula)};
}

double schur_defect_constant(double q) {
  require(q > 1.0, ErrorCode::kInvalidArgument, "Schur-defect constant requires q > 1");
  if (q <= 2.0) return 2.0 / std::sin(std::numbers::pi * (q - 1.0) / 2.0);
  return std::pow(2.0, q - 1.0);
}

Lemma12Report lemma12_report(const AnalyticBoundaryFunction& s, double q) {
  const double constant = schur_defect_constant(q);
  const SchurCheck check = schur_check(s, s.tolerance());
  require(check.pass, ErrorCode::kDomain,
          "lemma12_report requires a Schur function, max |s| = " +
              std::to_string(check.max_modulus));
  const Complex s0 = mean_value(s);
  require(std::abs(s0.imag()) <= 1e-8 && s0.real() >= -1e-12, ErrorCode::kDomain,
          "s(0) must be real and nonnegative; apply make_schur_positive first");

  double acc = 0.0;
  for (const Complex& v : s.boundary().samples()) acc += std::pow(std::abs(1.0 - v), q);
  const double lhs = acc / static_cast<double>(s.size());
  const double rhs = constant * (1.0 - s0.real());
  double ratio = 0.0;
  if (rhs > 0.0) {
    ratio = lhs / rhs;
  } else if (lhs > 0.0) {
    ratio = kInf;
  }
  const bool pass = lhs <= (1.0 + 1e-6) * rhs + 1e-15;
  return Lemma12Report{q, lhs, rhs, ratio, constant, s0.real(), std::abs(s0) <= 1e-12, pass};
}

double marcinkiewicz_constant(double p) {
  require(p > 1.0, ErrorCode::kInvalidArgument, "Marcinkiewicz constant requires p > 1");
  const double q = p / (p - 1.0);
  return std::pow(schur_defect_constant(q) / p, 1.0 / q);
}

Theorem11Report theorem11_report(const AnalyticBoundaryFunction& f, double p,
                                 double lambda) {
  const double constant = marcinkiewicz_constant(p);
  DecomposeOptions opts;
  opts.normalize = true;
  const DecompositionResult r = decompose(f, lambda, p, opts);
  const double bound = constant * std::pow(lambda, 1.0 - p);
  const double f0 = r.norms.f0_l1;
  return Theorem11Report{p,     lambda,       p / (p - 1.0), f0,   constant,
                         bound, f0 / bound,   r.scale,       r.s0, f0 <= bound * (1.0 + 1e-6)};
}

std::vector<double> geometric_lambda_grid(int lo, int hi, int points_per_octave) {
  require(lo <= hi && points_per_octave >= 1, ErrorCode::kInvalidArgument,
          "invalid lambda grid");
  std::vector<double> out;
  for (int j = lo * points_per_octave; j <= hi * points_per_octave; ++j)
    out.push_back(std::exp2(static_cast<double>(j) / points_per_octave));
  return out;
}

LambdaSweep theorem11_sweep(const AnalyticBoundaryFunction& f, double p,
                            const std::vector<double>& lambdas,
                            int tail_points_per_octave) {
  require(!lambdas.empty(), ErrorCode::kInvalidArgument, "empty lambda grid");
  require(tail_points_per_octave >= 1, ErrorCode::kInvalidArgument,
          "tail_points_per_octave must be positive");
  LambdaSweep sweep;
  sweep.slope_limit = 1.0 - p + 0.1;
  sweep.bounds_pass = true;
  sweep.monotone = true;

  std::vector<double> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  double prev_f0 = kInf, prev_f1 = 0.0;
  DecomposeOptions opts;
  opts.normalize = true;
  for (double lambda : sorted) {
    sweep.rows.push_back(theorem11_report(f, p, lambda));
    sweep.bounds_pass = sweep.bounds_pass && sweep.rows.back().pass;
    const DecompositionResult r = decompose(f, lambda, p, opts);
    // Monotonicity up to rounding of the quadrature sums.
    if (r.norms.f0_l1 > prev_f0 * (1.0 + 1e-12) + 1e-15) sweep.monotone = false;
    if (r.norms.f1_linf < prev_f1 * (1.0 - 1e-12)) sweep.monotone = false;
    if (r.norms.f1_linf > lambda * (1.0 + 1e-8)) sweep.monotone = false;
    prev_f0 = r.norms.f0_l1;
    prev_f1 = r.norms.f1_linf;
  }

  // Decaying tail: lambda >= ||f||_p = 1 up to the end of the grid.
  const double top = sorted.back();
  for (int j = 0;; ++j) {
    const double lambda = std::exp2(static_cast<double>(j) / tail_points_per_octave);
    if (lambda > top * (1.0 + 1e-12)) break;
    const DecompositionResult r = decompose(f, lambda, p, opts);
    if (r.norms.f0_l1 <= 1e-14) break;
    sweep.tail_lambdas.push_back(lambda);
    sweep.tail_f0.push_back(r.norms.f0_l1);
  }
  const std::size_t m = sweep.tail_lambdas.size();
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = std::log(sweep.tail_lambdas[i]);
      const double y = std::log(sweep.tail_f0[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double dm = static_cast<double>(m);
    sweep.tail_slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
    sweep.slope_pass = sweep.tail_slope <= sweep.slope_limit;
  } else {
    // f0 vanishes at lambda = 1 or right after: no decaying tail to fit.
    sweep.tail_slope = std::nan("");
    sweep.slope_pass = true;
  }
  return sweep;
}

// ---------------------------------------------------------------------------

double k_lower_L(const BoundaryFunction& f, double t) {
  require(t > 0.0, ErrorCode::kInvalidArgument, "K-functional requires t > 0");
  const std::vector<double> r = rearrangement(f);
  const double n = static_cast<double>(r.size());
  const double reach = std::min(t, 1.0) * n;
  double acc = 0.0;
  std::size_t j = 0;
  for (; j < r.size() && static_cast<double>(j + 1) <= reach; ++j) acc += r[j];
  if (j < r.size()) acc += (reach - static_cast<double>(j)) * r[j];
  return acc / n;
}

KFunctionalTable::KFunctionalTable(const AnalyticBoundaryFunction& f,
                                   std::vector<double> lambdas)
    : f_(f), lambdas_(std::move(lambdas)) {
  require(!lambdas_.empty(), ErrorCode::kInvalidArgument, "empty lambda grid");
  std::sort(lambdas_.begin(), lambdas_.end());
  for (double lambda : lambdas_) {
    const DecompositionResult r = decompose(f_, lambda, 1.0);
    f0_l1_.push_back(r.norms.f0_l1);
    f1_linf_.push_back(r.norms.f1_linf);
  }
  l1_ = norm_p(f_.boundary(), 1.0);
  linf_ = norm_p(f_.boundary(), kInf);
}

double KFunctionalTable::upper(double t, double* argmin_lambda) const {
  require(t > 0.0, ErrorCode::kInvalidArgument, "K-functional requires t > 0");
  // lambda = 0 (f0 = f) and lambda = inf (f1 = f) bracket the grid.
  double best = l1_, arg = 0.0;
  for (std::size_t j = 0; j < lambdas_.size(); ++j) {
    const double v = f0_l1_[j] + t * f1_linf_[j];
    if (v < best) {
      best = v;
      arg = lambdas_[j];
    }
  }
  if (t * linf_ < best) {
    best = t * linf_;
    arg = kInf;
  }
  if (argmin_lambda) *argmin_lambda = arg;
  return best;
}

double k_upper(const AnalyticBoundaryFunction& f, double t,
               const std::vector<double>& lambdas) {
  return KFunctionalTable(f, lambdas).upper(t);
}

KReport k_report(const AnalyticBoundaryFunction& f, const std::vector<double>& t_grid,
                 const std::vector<double>& lambdas) {
  require(!t_grid.empty(), ErrorCode::kInvalidArgument, "empty t grid");
  const KFunctionalTable table(f, lambdas);
  KReport rep;
  rep.t = t_grid;
  std::sort(rep.t.begin(), rep.t.end());
  for (double t : rep.t) {
    double arg = 0.0;
    rep.upper.push_back(table.upper(t, &arg));
    rep.lower.push_back(table.lower(t));
    rep.argmin_lambda.push_back(arg);
  }
  rep.sandwich = rep.upper_monotone = rep.lower_monotone = rep.lower_concave = true;
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    if (rep.lower[i] > rep.upper[i] * (1.0 + 1e-12) + 1e-15) rep.sandwich = false;
    if (i == 0) continue;
    if (rep.upper[i] < rep.upper[i - 1] * (1.0 - 1e-12)) rep.upper_monotone = false;
    if (rep.lower[i] < rep.lower[i - 1] * (1.0 - 1e-12)) rep.lower_monotone = false;
    if (i + 1 < rep.t.size()) {
      const double s1 = (rep.lower[i] - rep.lower[i - 1]) / (rep.t[i] - rep.t[i - 1]);
      const double s2 = (rep.lower[i + 1] - rep.lower[i]) / (rep.t[i + 1] - rep.t[i]);
      if (s2 > s1 * (1.0 + 1e-9) + 1e-12) rep.lower_concave = false;
    }
  }
  return rep;
}

namespace {

template <typename K>
InterpNorm interp_quadrature(K&& kfun, double theta, double q, int points_per_octave) {
  require(theta > 0.0 && theta < 1.0, ErrorCode::kInvalidArgument, "theta must lie in (0,1)");
  require(q >= 1.0 && std::isfinite(q), ErrorCode::kInvalidArgument, "q must lie in [1,inf)");
  require(points_per_octave >= 1, ErrorCode::kInvalidArgument, "points_per_octave >= 1");
  const int lo = -20 * points_per_octave, hi = 20 * points_per_octave;
  const double h = std::numbers::ln2 / points_per_octave;
  std::vector<double> g;
  for (int m = lo; m <= hi; ++m) {
    const double t = std::exp2(static_cast<double>(m) / points_per_octave);
    g.push_back(std::pow(std::pow(t, -theta) * kfun(t), q));
  }
  double body = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) body += 0.5 * h * (g[i] + g[i + 1]);

  // Outside [2^-20, 2^20] K is linear (below) and constant (above); both
  // tails integrate in closed form once that shape is confirmed.
  const double t0 = std::exp2(-20.0), t1 = std::exp2(20.0);
  const double k0 = kfun(t0), k0b = kfun(2.0 * t0);
  const double k1 = kfun(t1), k1b = kfun(0.5 * t1);
  const bool linear_below = std::abs(k0b - 2.0 * k0) <= 1e-9 * std::abs(k0b);
  const bool flat_above = std::abs(k1 - k1b) <= 1e-9 * std::abs(k1);
  const double below = std::pow(k0 / t0, q) * std::pow(t0, (1.0 - theta) * q) / ((1.0 - theta) * q);
  const double above = std::pow(k1, q) * std::pow(t1, -theta * q) / (theta * q);
  const double total = body + below + above;
  require(std::isfinite(total), ErrorCode::kDomain, "interpolation-norm quadrature diverged");
  const double frac = total > 0.0 ? (below + above) / total : 0.0;
  return InterpNorm{std::pow(total, 1.0 / q), frac, linear_below && flat_above};
}

}  // namespace

InterpNorm real_interp_norm(const AnalyticBoundaryFunction& f, double theta, double q,
                            const std::vector<double>& lambdas, int points_per_octave) {
  const KFunctionalTable table(f, lambdas);
  return interp_quadrature([&](double t) { return table.upper(t); }, theta, q,
                           points_per_octave);
}

InterpNorm real_interp_norm_lower(const BoundaryFunction& f, double theta, double q,
                                  int points_per_octave) {
  const std::vector<double> r = rearrangement(f);
  // Prefix sums make each K evaluation O(1).
  std::vector<double> prefix(r.size() + 1, 0.0);
  for (std::size_t j = 0; j < r.size(); ++j) prefix[j + 1] = prefix[j] + r[j];
  const double n = static_cast<double>(r.size());
  auto k = [&](double t) {
    const double reach = std::min(t, 1.0) * n;
    const std::size_t j = std::min(static_cast<std::size_t>(reach), r.size());
    double acc = prefix[j];
    if (j < r.size()) acc += (reach - static_cast<double>(j)) * r[j];
    return acc / n;
  };
  return interp_quadrature(k, theta, q, points_per_octave);
}

}  // namespace hardy
