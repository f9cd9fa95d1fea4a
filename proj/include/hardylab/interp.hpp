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

// Strip interpolant of a normalized martingale F between H^1 (Re zeta = 0)
// and H^inf (Re zeta = 1):
//
//   G(zeta) = EF + sum_i d_i w_i M^{(1 - 2 zeta)(1 + i)},   0 <= Re zeta <= 1,
//
// with d_i from the stopping decomposition and w_i from the truncation
// family. At zeta = 1/2 the factors M^0 vanish and G - F = -sum d_i (1 - w_i).
//
// Bound mode never needs the phases of w_i: it bounds |G| path by path by
// |EF| + sum_i |d_i| |w_i| M^{(1 - 2 Re zeta)(1 + i)}, which is independent
// of Im zeta.

#ifndef HARDYLAB_INTERP_HPP
#define HARDYLAB_INTERP_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/stopping.hpp"

namespace hardy {

enum class InterpMode { kBound, kPhase };

/// Per-path G(zeta). Requires a phased family (kInvalidArgument otherwise).
std::vector<Complex> interpolant_G(const StoppingDecomposition& dec,
                                   const TruncationFamily& family, Complex zeta);

/// Per-path upper bound for |G(zeta)| at Re zeta = re_zeta.
std::vector<double> interpolant_bound(const StoppingDecomposition& dec,
                                      const TruncationFamily& family, double re_zeta);

struct LineValue {
  std::string line;  // "theta" (Re zeta = 1/2), "h1" (Re zeta = 0), "hinf" (Re zeta = 1)
  double t = 0.0;    // Im zeta
  double value = 0.0;
  double stderr_ = 0.0;
};

struct EstimateResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double stderr_ = 0.0;
  double lhs_normalized = 0.0;  // divided by the Monte Carlo ||F||_2 power the bound uses
  bool pass = false;
};

struct InterpolationCertificate {
  double M = 2.0;
  int offset = 8;
  InterpMode mode = InterpMode::kBound;
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  std::vector<double> t_grid;
  double norm_F = 0.0;        // Monte Carlo ||F||_2
  double eta = 0.0;           // barrier overshoot used in the constants
  std::vector<LineValue> lines;

  // (1) ||G(1/2) - F||_2 <= 1/2. Bound mode uses sqrt of the square-function
  // bound; phase mode estimates the distance directly and also reports the
  // bound for comparison.
  EstimateResult theta;
  double theta_bound = 0.0;      // sqrt(Lemma37Report::bound)
  double requirement = 0.0;      // M^{2-offset} E(A^2), must be <= 1/4
  bool requirement_pass = false;

  // (2) sup_t ||G(it)||_1 <= C(M) ||F||_2^2 with
  // C(M) = 1 + 2 M^2 (1+eta) + 8 M^4 (1+eta) / (M^2 - 1).
  EstimateResult h1;
  double h1_chain = 0.0;         // |EF| + sum_j 2(1+eta) M^{2j+2} P(E_j)
  double constant_h1 = 0.0;

  // (3) sup_t max_p |G(1+it)| <= C3 = |EF| + 2(1+eta)(1 + offset + M/(M-1)).
  EstimateResult hinf;
  double constant_hinf = 0.0;
  double hinf_short_chain = 0.0;  // |EF| + 4M(1+eta), the shorter pointwise route
  bool hinf_short_chain_holds = false;

  bool pass() const { return theta.pass && h1.pass && hinf.pass; }
};

struct StripOptions {
  InterpMode mode = InterpMode::kBound;
  std::vector<double> t_grid = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
  double normalization_tolerance = 0.05;  // on |E|F|^2 - 1| beyond 5 standard errors
};

/// Throws kDomain when F is not normalized (E|F|^2 far from 1) and
/// kInvalidArgument when phase mode is requested on an unphased family.
InterpolationCertificate strip_bounds_report(const StoppingDecomposition& dec,
                                             const TruncationFamily& family,
                                             std::uint64_t seed,
                                             const StripOptions& opts = {});

// ---------------------------------------------------------------------------

struct JonesStep {
  std::vector<Complex> value;  // F(theta)
  double norm = 0.0;           // ||F|| in the interpolation family
};

using JonesOneStep = std::function<JonesStep(const std::vector<Complex>&)>;
using JonesNorm = std::function<double(const std::vector<Complex>&)>;

struct JonesResult {
  std::vector<double> residual;     // ||f - G_m(theta)||, m = 0, 1, ...
  std::vector<double> step_norm;    // ||F_m||
  std::vector<double> contract_ratio;  // ||F_m(theta) - r_{m-1}|| / ||r_{m-1}||
  std::vector<Complex> approximant;    // G_m(theta) at the last step
  double constant = 0.0;    // max_m ||F_m|| / ||r_{m-1}||
  double sum_norm = 0.0;    // sum_m ||F_m|| >= ||G_m||
  double slope = 0.0;       // least-squares slope of ln residual against m
  std::optional<std::size_t> violation;  // first step breaking the half-error contract
  bool exact = false;       // residual reached 0
  bool geometric = false;   // residual_m <= 2^{-m} ||f|| for all m
  bool norm_bound = false;  // sum_norm <= 2 C ||f||
  bool slope_pass = false;  // slope <= -0.8 ln 2, or exact
  bool converged() const { return !violation && geometric && norm_bound && slope_pass; }
};

/// Sums one-step approximations of the successive residuals. Stops at the
/// first contract violation, at an exact fit, or after `steps` steps.
JonesResult jones_iterate(const JonesOneStep& one_step, const std::vector<Complex>& f,
                          std::size_t steps, const JonesNorm& norm = {});

/// Root-mean-square of grid samples.
double grid_l2(const std::vector<Complex>& v);

/// One step through Wiener space: embed the analytic part of the residual,
/// build the interpolant in phase mode, project G(1/2) back to the grid and
/// keep its analytic part, so every residual stays analytic. The reported
/// norm is max(E|G(0)| bound, max |G(1)| bound).
JonesOneStep wiener_one_step(const PathEnsemble& paths, double M, int offset,
                             const PhaseOptions& phase = {});

}  // namespace hardy

#endif  // HARDYLAB_INTERP_HPP
