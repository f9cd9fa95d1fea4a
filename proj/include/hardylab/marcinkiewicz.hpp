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

// Analytic truncation of Hardy functions at a level lambda.
//
// For f = inner * outer the bounded part keeps the inner factor and replaces
// the outer modulus by min(|f|, lambda):
//
//   f1 = f * s,   s = outer_from_modulus(min(1, lambda / |f|)),   f0 = f - f1.
//
// s is a Schur function with s(0) = exp(-int_E log(|f| / lambda) dm) where
// E = {|f| >= lambda}, and the L^1 size of f0 = f (1 - s) is controlled by the
// Schur-defect inequality
//
//   int |1 - s|^q dm <= C_q (1 - s(0)),
//   C_q = 2 / sin(pi (q - 1) / 2)  for 1 < q <= 2,   C_q = 2^{q-1} for q > 2.

#ifndef HARDYLAB_MARCINKIEWICZ_HPP
#define HARDYLAB_MARCINKIEWICZ_HPP

#include <optional>
#include <vector>

#include "hardylab/circle.hpp"
#include "hardylab/factorization.hpp"

namespace hardy {

/// Node indicator of {|f(t_k)| >= lambda}.
std::vector<bool> level_set(const BoundaryFunction& f, double lambda);

struct DecomposeOptions {
  bool normalize = false;  // rescale f to ||f||_p = 1 first
  OuterOptions outer;
};

struct DecompositionNorms {
  double f0_l1;
  double f1_linf;
  double f_lp;
};

struct DecompositionResult {
  AnalyticBoundaryFunction f;  // the decomposed function (after normalization)
  AnalyticBoundaryFunction f1;
  AnalyticBoundaryFunction f0;
  AnalyticBoundaryFunction s;
  double lambda;
  double p;
  double scale;  // f = scale * input
  double s0;     // Re s(0)
  DecompositionNorms norms;
};

/// Throws kDegenerate if |f| is below the log floor at every node.
DecompositionResult decompose(const AnalyticBoundaryFunction& f, double lambda,
                              double p, const DecomposeOptions& opts = {});

struct SZeroTwoWays {
  double direct;   // Re mean_value(s)
  double formula;  // exp(-(1/N) sum_{k in E} log(|f_k| / lambda))
  double difference;
};

SZeroTwoWays s_zero_two_ways(const DecompositionResult& r);

/// C_q of the Schur-defect inequality; throws for q <= 1.
double schur_defect_constant(double q);

struct Lemma12Report {
  double q;
  double lhs;       // int |1 - s|^q dm
  double rhs;       // C_q (1 - s(0))
  double ratio;     // lhs / rhs (0 when both vanish)
  double constant;  // C_q
  double s0;
  bool s0_vanishes;  // hypothesis s(0) > 0 is vacuous; rhs = C_q
  bool pass;         // lhs <= (1 + 1e-6) rhs
};

/// Requires s in the Schur class (at its own analyticity tolerance) and s(0)
/// real and nonnegative; apply make_schur_positive first.
Lemma12Report lemma12_report(const AnalyticBoundaryFunction& s, double q);

/// C_p = (C_q / p)^{1/q} with q = p / (p - 1).
double marcinkiewicz_constant(double p);

struct Theorem11Report {
  double p;
  double lambda;
  double q;         // Hoelder conjugate of p
  double f0_l1;
  double constant;  // C_p
  double bound;     // C_p lambda^{1-p}
  double ratio;     // f0_l1 / bound
  double scale;     // normalization factor applied to the input
  double s0;
  bool pass;
};

/// Normalizes f to ||f||_p = 1 internally and reports the scale factor.
Theorem11Report theorem11_report(const AnalyticBoundaryFunction& f, double p,
                                 double lambda);

struct LambdaSweep {
  std::vector<Theorem11Report> rows;
  std::vector<double> tail_lambdas;
  std::vector<double> tail_f0;
  double tail_slope;  // least-squares slope of log f0_l1 against log lambda
  double slope_limit;  // 1 - p + 0.1
  bool bounds_pass;
  bool slope_pass;
  bool monotone;  // f0_l1 nonincreasing and f1_linf nondecreasing in lambda
};

/// Runs theorem11_report over `lambdas` and fits the decay slope over the tail
/// {lambda >= 1, f0_l1 > 0}, sampled on a geometric grid with
/// `tail_points_per_octave` points per octave.
LambdaSweep theorem11_sweep(const AnalyticBoundaryFunction& f, double p,
                            const std::vector<double>& lambdas,
                            int tail_points_per_octave = 4);

/// 2^{j / points_per_octave} for j in [lo * ppo, hi * ppo].
std::vector<double> geometric_lambda_grid(int lo = -20, int hi = 20,
                                          int points_per_octave = 1);

// ---------------------------------------------------------------------------
// K-functional estimates for the couple (H^1, H^inf), bracketed by the exact
// K-functional of (L^1, L^inf).

/// K(f, t; L^1, L^inf) = int_0^{min(t,1)} f*(s) ds.
double k_lower_L(const BoundaryFunction& f, double t);

class KFunctionalTable {
 public:
  /// Decomposes f once per lambda. Throws kInvalidArgument on an empty grid.
  KFunctionalTable(const AnalyticBoundaryFunction& f, std::vector<double> lambdas);

  /// min of ||f0||_1 + t ||f1||_inf over the grid and the two trivial splits
  /// (lambda = 0: f0 = f, lambda = inf: f1 = f); ties go to the smallest
  /// lambda.
  double upper(double t, double* argmin_lambda = nullptr) const;
  double lower(double t) const { return k_lower_L(f_.boundary(), t); }

  const std::vector<double>& lambdas() const noexcept { return lambdas_; }
  const std::vector<double>& f0_l1() const noexcept { return f0_l1_; }
  const std::vector<double>& f1_linf() const noexcept { return f1_linf_; }

 private:
  AnalyticBoundaryFunction f_;
  std::vector<double> lambdas_;
  std::vector<double> f0_l1_;
  std::vector<double> f1_linf_;
  double l1_ = 0.0;
  double linf_ = 0.0;
};

double k_upper(const AnalyticBoundaryFunction& f, double t,
               const std::vector<double>& lambdas);

struct KReport {
  std::vector<double> t;
  std::vector<double> upper;
  std::vector<double> lower;
  std::vector<double> argmin_lambda;
  bool sandwich;         // lower <= upper everywhere
  bool upper_monotone;   // nondecreasing in t
  bool lower_monotone;
  bool lower_concave;    // on the t-grid (checked on the L side only)
  std::optional<double> interp_norm;  // for (theta, q) when requested
};

KReport k_report(const AnalyticBoundaryFunction& f, const std::vector<double>& t_grid,
                 const std::vector<double>& lambdas);

struct InterpNorm {
  double value;
  double tail_fraction;  // share of the integral from outside [2^-20, 2^20]
  bool converged;        // K confirmed linear below and constant above the window
};

/// (int_0^inf [t^{-theta} K(f,t)]^q dt/t)^{1/q}: trapezoid in log t over
/// [2^-20, 2^20] with `points_per_octave` nodes per octave, plus the two tails
/// in closed form. Uses the upper K-functional of the table.
InterpNorm real_interp_norm(const AnalyticBoundaryFunction& f, double theta, double q,
                            const std::vector<double>& lambdas,
                            int points_per_octave = 8);

/// Same quadrature with the (L^1, L^inf) K-functional.
InterpNorm real_interp_norm_lower(const BoundaryFunction& f, double theta, double q,
                                  int points_per_octave = 8);

}  // namespace hardy

#endif  // HARDYLAB_MARCINKIEWICZ_HPP
