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

// Stopping-time decomposition of a martingale at the levels M^i and the
// truncation family built from its maximal function A = sup_k |F_k|.
//
//   tau_0 = 0,  tau_{i+1} = first k >= tau_i with |F_k| > M^{i+1},
//   F_i = F at tau_i (the final value when tau_i is infinite),
//   d_i = F_{i+1} - F_i,  so  F = F_0 + sum_{i>=0} d_i  on every path.
//
//   |w_i| = min(A, M^{i+offset}) / A,   E w_i = exp E ln |w_i|.

#ifndef HARDYLAB_STOPPING_HPP
#define HARDYLAB_STOPPING_HPP

#include <optional>
#include <vector>

#include "hardylab/stats.hpp"
#include "hardylab/wiener.hpp"

namespace hardy {

struct StoppingDecomposition {
  double M = 2.0;
  std::size_t paths = 0;
  std::size_t levels = 0;  // d_0 .. d_{levels-1}; tau_levels is infinite everywhere
  Complex mean;            // F_0, the time-0 value
  std::vector<Complex> final_value;  // F on each path
  std::vector<double> A;             // maximal function
  std::vector<Complex> d;            // path-major, `levels` per path
  std::vector<std::int64_t> tau;     // path-major, levels + 1 per path; -1 = never
  std::vector<double> level_probability;  // P(tau_i < inf), i < levels

  // Discrete paths overshoot the barriers: eta is the largest relative excess
  // (|F_{tau_j}| - M^j) / M^j over all crossings, and every bound of the form
  // 2 M^{i+1} is checked as 2 M^{i+1} (1 + eta).
  double eta = 0.0;
  double max_step = 0.0;  // largest single-step |F_{k+1} - F_k|

  double max_jump_ratio = 0.0;        // max |d_i| / (2 M^{i+1} (1 + eta))
  std::size_t support_violations = 0; // d_i != 0 with tau_i infinite
  double telescoping_error = 0.0;     // max |F_0 + sum d_i - F| / max(1, |F|)

  // The radial projection at exit breaks the discrete martingale property on
  // the last step only. exit_defect[p] estimates |F(raw exit point) - F(zhat)|
  // by linearizing along the last increment; the statistical checks below
  // allow 3 standard errors plus the bias this defect can create.
  std::vector<double> exit_defect;

  InequalityCheck parseval;  // sum_i E|d_i|^2 against E|F - F_0|^2, two-sided
  double parseval_gap = 0.0;
  double parseval_budget = 0.0;
  double worst_orthogonality_sigmas = 0.0;  // max_{i<j} |E d_i conj(d_j)| / stderr
  bool orthogonality_pass = true;

  Complex diff(std::size_t p, std::size_t i) const { return d[p * levels + i]; }
  bool reached(std::size_t p, std::size_t i) const { return tau[p * (levels + 1) + i] >= 0; }

  bool exact_pass() const {
    return max_jump_ratio <= 1.0 + 1e-12 && support_violations == 0 &&
           telescoping_error <= 1e-10;
  }
};

/// Throws kDegenerate when more than max_levels levels are populated.
StoppingDecomposition stopping_decompose(const Martingale& F, const PathEnsemble& paths,
                                         double M, std::size_t max_levels = 64);

struct PhaseOptions {
  RegressionOptions regression;
  int state_powers = 2;  // powers of the running log-maximum feature
};

struct TruncationFamily {
  double M = 2.0;
  int offset = 8;
  std::size_t levels = 0;
  std::size_t paths = 0;
  std::vector<double> modulus;     // |w_i|, path-major
  std::vector<double> Ew;          // exp E ln |w_i|
  std::vector<double> Ew2;         // E |w_i|^2
  std::vector<double> e_one_minus_w_sq;  // 2 (1 - Ew) - (1 - E|w|^2)
  std::vector<double> tail_mean;   // E(1_{A > M^{i+offset}} A)
  std::vector<InequalityCheck> link1;  // E|1-w|^2 <= 2(1 - Ew)
  std::vector<InequalityCheck> link2;  // 2(1 - Ew) <= 2 E(1_E ln(A / M^{i+offset}))
  std::vector<InequalityCheck> link3;  // ... <= 2 M^{-i-offset} E(1_E A)
  bool modulus_monotone = true;    // 0 < |w_i| <= |w_{i+1}| <= 1 on every path
  bool mean_monotone = true;       // Ew_i nondecreasing, in (0, 1]

  // Phase mode only: w_i = |w_i| exp(i H ln|w_i|) per path.
  std::optional<std::vector<Complex>> phased;
  std::vector<std::size_t> phased_levels;  // levels where ln|w_i| is not identically 0
  std::vector<double> phase_mean_gap;      // |mean w_i - Ew_i| per level

  double w_modulus(std::size_t p, std::size_t i) const { return modulus[p * levels + i]; }
  Complex w(std::size_t p, std::size_t i) const {
    return phased ? (*phased)[p * levels + i] : Complex(w_modulus(p, i), 0.0);
  }
  bool chain_pass() const;
};

/// Bound mode: moduli and expectations from terminal data only.
/// Throws kDegenerate when some path has A = 0 (E F = 0 is excluded).
TruncationFamily truncation_family(const StoppingDecomposition& dec, int offset);

/// Adds the phases: for each level with nontrivial ln|w_i|, a least-squares
/// martingale of ln|w_i| in (z, running log-maximum) and its Monte Carlo
/// Hilbert transform.
void add_phases(TruncationFamily& family, const Martingale& F, const PathEnsemble& paths,
                const PhaseOptions& opts = {});

struct Lemma35Report {
  std::size_t paths = 0;
  std::size_t violations = 0;  // paths with sum_i 1_{A > M^i} M^i > 2 M A
  double worst_ratio = 0.0;
  bool pass = false;
};

struct Lemma36Report {
  double lhs = 0.0;          // sum_i M^i E(1_{A > M^{i+offset}} A)
  double rhs = 0.0;          // M^{2-offset} E(A^2)
  double rhs_sharper = 0.0;  // M^{1-offset} E(A^2)
  double stderr_ = 0.0;
  double ratio = 0.0;        // lhs / rhs
  double ratio_sharper = 0.0;
  std::size_t path_violations = 0;  // against rhs, per path
  bool pass = false;
};

struct Lemma37Report {
  std::vector<double> diagonal;  // 8 (1+eta)^2 M^{i+2-offset} E(1_{A > M^{i+offset}} A)
  double near = 0.0;             // sum_{|i-j| < offset} sqrt(b_i b_j)
  double far = 0.0;              // 2 sum_{j-i >= offset} 16 (1+eta)^2 M^{i+j+2} P(E_j)
  double cauchy_schwarz = 0.0;   // (sum_i sqrt(b_i))^2
  double bound = 0.0;            // min(near + far, cauchy_schwarz)
  double rhs = 0.0;              // M^{2-offset} E(A^2)
  std::optional<Estimate> direct;  // E|sum d_i (1 - w_i)|^2 in phase mode
  bool pass = false;               // bound <= rhs, and direct <= rhs + 3 se
};

struct BasicEstimates {
  Lemma35Report pointwise;
  Lemma36Report integral;
  Lemma37Report square;
  bool pass() const { return pointwise.pass && integral.pass && square.pass; }
};

BasicEstimates basic_estimates_report(const StoppingDecomposition& dec,
                                      const TruncationFamily& family);

}  // namespace hardy

#endif  // HARDYLAB_STOPPING_HPP
