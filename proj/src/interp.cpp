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

#include "hardylab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardylab/error.hpp"

namespace hardy {
namespace {

void check_shapes(const StoppingDecomposition& dec, const TruncationFamily& fam) {
  require(dec.paths == fam.paths && dec.levels == fam.levels, ErrorCode::kSizeMismatch,
          "decomposition and family do not match");
}

double abs_mean(std::span<const Complex> v, double* se) {
  std::vector<double> m(v.size());
  for (std::size_t p = 0; p < v.size(); ++p) m[p] = std::abs(v[p]);
  const Estimate e = estimate(m);
  if (se) *se = e.stderr_;
  return e.mean;
}

double max_abs(std::span<const Complex> v) {
  double out = 0.0;
  for (Complex x : v) out = std::max(out, std::abs(x));
  return out;
}

}  // namespace

std::vector<Complex> interpolant_G(const StoppingDecomposition& dec,
                                   const TruncationFamily& fam, Complex zeta) {
  check_shapes(dec, fam);
  require(fam.phased.has_value(), ErrorCode::kInvalidArgument,
          "phase-mode interpolant needs a phased truncation family");
  const std::size_t P = dec.paths, L = dec.levels;
  const double lm = std::log(dec.M);
  std::vector<Complex> factor(L);
  for (std::size_t i = 0; i < L; ++i)
    factor[i] = std::exp((1.0 - 2.0 * zeta) * (1.0 + static_cast<double>(i)) * lm);
  std::vector<Complex> out(P);
  for (std::size_t p = 0; p < P; ++p) {
    Complex g = dec.mean;
    for (std::size_t i = 0; i < L; ++i) g += dec.diff(p, i) * fam.w(p, i) * factor[i];
    out[p] = g;
  }
  return out;
}

std::vector<double> interpolant_bound(const StoppingDecomposition& dec,
                                      const TruncationFamily& fam, double re_zeta) {
  check_shapes(dec, fam);
  const std::size_t P = dec.paths, L = dec.levels;
  std::vector<double> factor(L);
  for (std::size_t i = 0; i < L; ++i)
    factor[i] = std::pow(dec.M, (1.0 - 2.0 * re_zeta) * (1.0 + static_cast<double>(i)));
  std::vector<double> out(P);
  const double base = std::abs(dec.mean);
  for (std::size_t p = 0; p < P; ++p) {
    double b = base;
    for (std::size_t i = 0; i < L; ++i)
      b += std::abs(dec.diff(p, i)) * fam.w_modulus(p, i) * factor[i];
    out[p] = b;
  }
  return out;
}

InterpolationCertificate strip_bounds_report(const StoppingDecomposition& dec,
                                             const TruncationFamily& fam,
                                             std::uint64_t seed, const StripOptions& opts) {
  check_shapes(dec, fam);
  require(!opts.t_grid.empty(), ErrorCode::kInvalidArgument, "empty t-grid");
  const bool phase = opts.mode == InterpMode::kPhase;
  require(!phase || fam.phased.has_value(), ErrorCode::kInvalidArgument,
          "phase mode needs a phased truncation family");
  const std::size_t P = dec.paths, L = dec.levels;
  const double M = dec.M, eta = dec.eta;

  std::vector<double> f2(P);
  for (std::size_t p = 0; p < P; ++p) f2[p] = std::norm(dec.final_value[p]);
  const Estimate ef2 = estimate(f2);
  require(std::abs(ef2.mean - 1.0) <= opts.normalization_tolerance + 5.0 * ef2.stderr_,
          ErrorCode::kDomain,
          "F is not normalized: E|F|^2 = " + std::to_string(ef2.mean));

  InterpolationCertificate c;
  c.M = M;
  c.offset = fam.offset;
  c.mode = opts.mode;
  c.seed = seed;
  c.paths = P;
  c.t_grid = opts.t_grid;
  c.norm_F = std::sqrt(ef2.mean);
  c.eta = eta;

  const BasicEstimates basic = basic_estimates_report(dec, fam);

  // (1) the midline.
  c.theta_bound = std::sqrt(basic.square.bound);
  c.requirement = basic.square.rhs;
  c.requirement_pass = c.requirement <= 0.25 * ef2.mean;
  c.theta.name = "||G(1/2) - F||_2 <= ||F||_2 / 2";
  c.theta.rhs = 0.5 * c.norm_F;
  if (phase) {
    const auto g = interpolant_G(dec, fam, 0.5);
    std::vector<double> d2(P);
    for (std::size_t p = 0; p < P; ++p) d2[p] = std::norm(g[p] - dec.final_value[p]);
    const Estimate e = estimate(d2);
    c.theta.lhs = std::sqrt(e.mean);
    c.theta.stderr_ = e.mean > 0.0 ? e.stderr_ / (2.0 * c.theta.lhs) : 0.0;
    c.theta.pass = c.theta.lhs <= c.theta.rhs + 3.0 * c.theta.stderr_;
  } else {
    c.theta.lhs = c.theta_bound;
    c.theta.pass = c.theta.lhs <= c.theta.rhs;
  }
  c.theta.lhs_normalized = c.theta.lhs / c.norm_F;
  c.lines.push_back({"theta", 0.0, c.theta.lhs, c.theta.stderr_});

  // (2) the H^1 line.
  const auto b0 = interpolant_bound(dec, fam, 0.0);
  const Estimate eb0 = estimate(b0);
  c.h1_chain = std::abs(dec.mean);
  for (std::size_t j = 0; j < L; ++j)
    c.h1_chain += 2.0 * (1.0 + eta) * std::pow(M, 2.0 * j + 2.0) * dec.level_probability[j];
  c.constant_h1 = 1.0 + 2.0 * M * M * (1.0 + eta) + 8.0 * std::pow(M, 4) * (1.0 + eta) / (M * M - 1.0);
  c.h1.name = "sup_t ||G(it)||_1 <= C(M) ||F||_2^2";
  c.h1.rhs = c.constant_h1 * ef2.mean;
  bool h1_consistent = eb0.mean <= c.h1_chain * (1.0 + 1e-12);
  if (phase) {
    for (double t : opts.t_grid) {
      double se = 0.0;
      const double v = abs_mean(interpolant_G(dec, fam, Complex(0.0, t)), &se);
      c.lines.push_back({"h1", t, v, se});
      if (v > c.h1.lhs) {
        c.h1.lhs = v;
        c.h1.stderr_ = se;
      }
      // |G| <= bound holds path by path.
      if (v > eb0.mean * (1.0 + 1e-12) + 1e-15) h1_consistent = false;
    }
  } else {
    for (double t : opts.t_grid) c.lines.push_back({"h1", t, eb0.mean, eb0.stderr_});
    c.h1.lhs = eb0.mean;
    c.h1.stderr_ = eb0.stderr_;
  }
  c.h1.lhs_normalized = c.h1.lhs / ef2.mean;
  c.h1.pass = h1_consistent && c.h1.lhs <= c.h1.rhs + 3.0 * c.h1.stderr_;

  // (3) the H^inf line.
  const auto b1 = interpolant_bound(dec, fam, 1.0);
  const double max_b1 = *std::max_element(b1.begin(), b1.end());
  c.constant_hinf = std::abs(dec.mean) +
                    2.0 * (1.0 + eta) * (1.0 + fam.offset + M / (M - 1.0));
  c.hinf_short_chain = std::abs(dec.mean) + 4.0 * M * (1.0 + eta);
  c.hinf_short_chain_holds = max_b1 <= c.hinf_short_chain;
  c.hinf.name = "sup_t max |G(1+it)| <= C3";
  c.hinf.rhs = c.constant_hinf;
  bool hinf_consistent = true;
  if (phase) {
    for (double t : opts.t_grid) {
      const double v = max_abs(interpolant_G(dec, fam, Complex(1.0, t)));
      c.lines.push_back({"hinf", t, v, 0.0});
      c.hinf.lhs = std::max(c.hinf.lhs, v);
      if (v > max_b1 * (1.0 + 1e-12) + 1e-15) hinf_consistent = false;
    }
  } else {
    for (double t : opts.t_grid) c.lines.push_back({"hinf", t, max_b1, 0.0});
    c.hinf.lhs = max_b1;
  }
  c.hinf.lhs_normalized = c.hinf.lhs / c.norm_F;
  c.hinf.pass = hinf_consistent && c.hinf.lhs <= c.hinf.rhs * (1.0 + 1e-12);
  return c;
}

// ---------------------------------------------------------------------------

double grid_l2(const std::vector<Complex>& v) {
  if (v.empty()) return 0.0;
  CompensatedSum s;
  for (Complex x : v) s.add(std::norm(x));
  return std::sqrt(s.value() / static_cast<double>(v.size()));
}

JonesResult jones_iterate(const JonesOneStep& one_step, const std::vector<Complex>& f,
                          std::size_t steps, const JonesNorm& norm_in) {
  const JonesNorm norm = norm_in ? norm_in : JonesNorm(grid_l2);
  JonesResult out;
  const double f_norm = norm(f);
  std::vector<Complex> r = f;
  out.approximant.assign(f.size(), 0.0);
  out.residual.push_back(f_norm);
  out.exact = f_norm == 0.0;
  for (std::size_t m = 1; m <= steps && !out.exact; ++m) {
    const double r_norm = out.residual.back();
    const JonesStep st = one_step(r);
    require(st.value.size() == r.size(), ErrorCode::kSizeMismatch,
            "one-step map changed the grid size");
    std::vector<Complex> next(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) next[k] = r[k] - st.value[k];
    const double ratio = norm(next) / r_norm;
    out.contract_ratio.push_back(ratio);
    out.step_norm.push_back(st.norm);
    out.constant = std::max(out.constant, st.norm / r_norm);
    if (ratio > 0.5 * (1.0 + 1e-12)) {
      out.violation = m;
      break;
    }
    out.sum_norm += st.norm;
    for (std::size_t k = 0; k < r.size(); ++k) out.approximant[k] += st.value[k];
    r = std::move(next);
    out.residual.push_back(norm(r));
    out.exact = out.residual.back() == 0.0;
  }

  out.geometric = true;
  for (std::size_t m = 0; m < out.residual.size(); ++m)
    if (out.residual[m] > std::ldexp(f_norm, -static_cast<int>(m)) * (1.0 + 1e-12))
      out.geometric = false;
  out.norm_bound = out.sum_norm <= 2.0 * out.constant * f_norm * (1.0 + 1e-12);

  if (out.exact) {
    out.slope = -std::numeric_limits<double>::infinity();
    out.slope_pass = !out.violation;
    return out;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (std::size_t m = 0; m < out.residual.size(); ++m) {
    if (!(out.residual[m] > 0.0)) continue;
    const double x = static_cast<double>(m), y = std::log(out.residual[m]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  if (n >= 2) {
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.slope_pass = out.slope <= -0.8 * std::log(2.0);
  }
  return out;
}

JonesOneStep wiener_one_step(const PathEnsemble& paths, double M, int offset,
                             const PhaseOptions& phase) {
  return [&paths, M, offset, phase](const std::vector<Complex>& r) {
    JonesStep st;
    const double s = grid_l2(r);
    st.value.assign(r.size(), 0.0);
    if (s == 0.0) return st;
    std::vector<Complex> unit(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) unit[k] = r[k] / s;
    const AnalyticMartingale F = embed(riesz_project(BoundaryFunction(std::move(unit))));
    const StoppingDecomposition dec = stopping_decompose(F, paths, M);
    TruncationFamily fam = truncation_family(dec, offset);
    add_phases(fam, F, paths, phase);
    const auto g = interpolant_G(dec, fam, 0.5);
    const AnalyticBoundaryFunction back = riesz_project(project(g, paths, r.size()));
    for (std::size_t k = 0; k < r.size(); ++k) st.value[k] = s * back[k];
    const auto b0 = interpolant_bound(dec, fam, 0.0);
    const auto b1 = interpolant_bound(dec, fam, 1.0);
    st.norm = s * std::max(estimate(b0).mean, *std::max_element(b1.begin(), b1.end()));
    return st;
  };
}

}  // namespace hardy
