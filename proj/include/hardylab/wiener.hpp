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

// Complex Brownian motion in the unit disk, stopped at the first grid time
// with |z| > 1.
//
// Paths are never stored. Each path p owns an RNG substream seeded from
// (seed, p) and is regenerated on demand by PathEnsemble::replay, so an
// ensemble costs O(P) memory and every reduction is a loop over paths in
// index order. The stopped path is z_0 = 0, z_1, ..., z_{K-1} (inside the
// disk) followed by z_K = the radial projection of the first exterior point.

#ifndef HARDYLAB_WIENER_HPP
#define HARDYLAB_WIENER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hardylab/circle.hpp"
#include "hardylab/stats.hpp"

namespace hardy {

struct SimConfig {
  std::size_t paths = 10000;
  double dt = 1e-3;
  double t_max = 20.0;
  std::uint64_t seed = 0;
  double M = 2.0;
  int offset = 8;
  int regression_degree = 6;

  /// Throws kInvalidArgument.
  void validate() const;
  std::size_t max_steps() const;
};

struct PathBuffer {
  std::vector<Complex> z;    // stopped path, K + 1 points
  std::vector<Complex> dz;   // z[k+1] - z[k], K entries
  std::vector<Complex> raw;  // Gaussian increments as drawn, K entries

  std::size_t exit_index() const noexcept { return dz.size(); }
};

class PathEnsemble {
 public:
  static PathEnsemble sample(const SimConfig& config);

  const SimConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return exit_index_.size(); }

  std::size_t exit_index(std::size_t p) const { return exit_index_[p]; }
  Complex exit_point(std::size_t p) const { return exit_point_[p]; }
  double exit_time(std::size_t p) const {
    return static_cast<double>(exit_index_[p]) * config_.dt;
  }
  /// |first exterior point| for each path; 1 for paths cut off at t_max.
  double exit_radius(std::size_t p) const { return exit_radius_[p]; }
  /// Paths still inside the disk at t_max (projected radially regardless).
  std::size_t unexited() const noexcept { return unexited_; }
  std::size_t max_exit_index() const noexcept { return max_exit_; }

  /// Regenerates path p bit-exactly.
  void replay(std::size_t p, PathBuffer& out) const;

  /// Number of paths with exit_index > k, for k in [0, max_exit_index()].
  std::vector<std::size_t> alive_counts() const;

  /// Writes the raw increments path-major, step-minor as little-endian
  /// float64 (re, im) pairs; path p contributes exit_index(p) pairs.
  void write_increments(const std::string& path) const;
  /// Same data as CSV with header path,step,re,im.
  void write_increments_csv(const std::string& path) const;

 private:
  SimConfig config_;
  std::vector<std::uint32_t> exit_index_;
  std::vector<Complex> exit_point_;
  std::vector<double> exit_radius_;
  std::size_t unexited_ = 0;
  std::size_t max_exit_ = 0;
};

/// Reads a file written by write_increments and checks it against the
/// ensemble; returns the largest absolute difference (0 for a faithful file).
double compare_increments(const PathEnsemble& paths, const std::string& file);

// ---------------------------------------------------------------------------
// Adapted processes along stopped paths.

class Martingale {
 public:
  virtual ~Martingale() = default;

  /// values[k] for k = 0..K_p; resizes `values`.
  virtual void evaluate(std::size_t p, const PathBuffer& path,
                        std::vector<Complex>& values) const = 0;

  /// Final value on path p. The default replays the path.
  virtual Complex terminal(std::size_t p, const PathEnsemble& paths) const;

  /// Value at time 0, shared by all paths.
  virtual Complex initial() const = 0;
};

/// Polynomial (truncated power series) of z along the path:
/// values g(z_k) where g = sum_j a_j z^j, optionally reduced to Re g or Im g.
class AnalyticMartingale final : public Martingale {
 public:
  enum class Part { kFull, kReal, kImag };

  AnalyticMartingale(std::vector<Complex> taylor, Part part = Part::kFull);

  void evaluate(std::size_t p, const PathBuffer& path,
                std::vector<Complex>& values) const override;
  Complex terminal(std::size_t p, const PathEnsemble& paths) const override;
  Complex initial() const override;

  Complex at(Complex z) const;
  const std::vector<Complex>& taylor() const noexcept { return taylor_; }

 private:
  std::vector<Complex> taylor_;
  Part part_;
};

/// Values stored per path; the form used for small ensembles and tests.
class MartingaleMatrix final : public Martingale {
 public:
  static MartingaleMatrix materialize(const Martingale& m, const PathEnsemble& paths);

  void evaluate(std::size_t p, const PathBuffer& path,
                std::vector<Complex>& values) const override;
  Complex terminal(std::size_t p, const PathEnsemble& paths) const override;
  Complex initial() const override;

  std::span<const Complex> row(std::size_t p) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Complex> values_;
};

/// F_{p,k} = f(z_{p,k}) with f(zhat_p) at the exit.
AnalyticMartingale embed(const AnalyticBoundaryFunction& f);

/// Harmonic extension of a real u along the path (Re of u's analytic
/// completion h = c_0 + 2 sum_{j>0} c_j z^j). Throws kNotReal.
AnalyticMartingale harmonic_extension(const BoundaryFunction& u);

/// Harmonic extension of conjugate(u): Im h along the path, (Hu)(zhat) at
/// the exit. Throws kNotReal.
AnalyticMartingale stochastic_hilbert_closed(const BoundaryFunction& u);

std::vector<Complex> terminal_values(const Martingale& m, const PathEnsemble& paths);

/// Angular-bin means of `terminal` onto an n-point grid (bin = nearest node
/// of arg zhat). Throws kDegenerate naming the first empty bin.
BoundaryFunction project(std::span<const Complex> terminal, const PathEnsemble& paths,
                         std::size_t n);

/// Index of the grid node nearest to arg zhat_p.
std::size_t nearest_node(const PathEnsemble& paths, std::size_t p, std::size_t n);

/// sup_k |F_{p,k}| including k = 0 and the exit value.
std::vector<double> maximal_function(const Martingale& m, const PathEnsemble& paths);

// ---------------------------------------------------------------------------
// Least-squares estimation of Ito integrands.

/// Adapted real side information attached to every path step, used as an
/// extra regressor (for example a running maximum).
class StateProcess {
 public:
  virtual ~StateProcess() = default;
  virtual void evaluate(std::size_t p, const PathBuffer& path,
                        std::vector<double>& state) const = 0;
};

struct RegressionOptions {
  int degree = 6;             // real monomials x^i y^j with i + j <= degree
  int state_powers = 0;       // times s^m for m = 0..state_powers
  int stride = 1;             // fit on steps with (k + p) % stride == 0
  std::size_t rows_per_coefficient = 50;
  std::size_t max_bucket_steps = 0;  // 0: one time bucket for all steps
  double rcond = 1e-13;
};

/// Regression basis evaluated at one path step. Over C the real monomials
/// span the same space as z^a conj(z)^b, and the Gram matrix stays real.
class RegressionBasis {
 public:
  RegressionBasis(int degree, int state_powers);
  std::size_t size() const noexcept { return size_; }
  void evaluate(Complex z, double state, double* out) const;

 private:
  int degree_;
  int state_powers_;
  std::size_t size_;
};

/// Piecewise-constant-in-time fit: on each time bucket, a coefficient vector
/// over the regression basis.
class RegressionModel {
 public:
  RegressionModel(RegressionOptions opts, std::vector<std::size_t> bucket_start,
                  std::vector<std::vector<Complex>> coefficients,
                  std::size_t rank_deficient, std::vector<std::size_t> rows);

  Complex predict(std::size_t k, Complex z, double state = 0.0) const;
  std::size_t bucket_of(std::size_t k) const;
  std::size_t buckets() const noexcept { return bucket_start_.size(); }
  std::size_t rank_deficient_buckets() const noexcept { return rank_deficient_; }
  const std::vector<std::size_t>& bucket_rows() const noexcept { return rows_; }
  const RegressionOptions& options() const noexcept { return opts_; }

 private:
  RegressionOptions opts_;
  RegressionBasis basis_;
  std::vector<std::size_t> bucket_start_;
  std::vector<std::vector<Complex>> coeffs_;
  std::size_t rank_deficient_;
  std::vector<std::size_t> rows_;
};

/// Y_{p,k} ~ E[dR_k conj(dz_k) | F_k] / (2 dt). For R = f(z) this is f'(z).
RegressionModel representation_regress(const Martingale& R, const PathEnsemble& paths,
                                       const RegressionOptions& opts = {},
                                       const StateProcess* state = nullptr);

/// Least-squares Monte Carlo martingale of a terminal variable: interior
/// values are regressions of X on the basis at each time bucket, the time-0
/// value is the sample mean and the exit value is X itself.
class ConditionalExpectation final : public Martingale {
 public:
  ConditionalExpectation(std::vector<Complex> terminal, RegressionModel model,
                         Complex mean, const StateProcess* state);

  void evaluate(std::size_t p, const PathBuffer& path,
                std::vector<Complex>& values) const override;
  Complex terminal(std::size_t p, const PathEnsemble& paths) const override;
  Complex initial() const override { return mean_; }

 private:
  std::vector<Complex> terminal_;
  RegressionModel model_;
  Complex mean_;
  const StateProcess* state_;
};

ConditionalExpectation regress_conditional_expectation(std::vector<Complex> terminal,
                                                       const PathEnsemble& paths,
                                                       const RegressionOptions& opts = {},
                                                       const StateProcess* state = nullptr);

/// The Ito sum sum_{j<k} 2 Im(Y_j dz_j) of a fitted integrand, as a process.
class ItoSum final : public Martingale {
 public:
  ItoSum(RegressionModel model, const StateProcess* state);

  void evaluate(std::size_t p, const PathBuffer& path,
                std::vector<Complex>& values) const override;
  Complex initial() const override { return 0.0; }

  const RegressionModel& model() const noexcept { return model_; }

 private:
  RegressionModel model_;
  const StateProcess* state_;
};

struct HilbertEstimate {
  std::vector<double> value;  // HR_p = sum_k 2 Im(Y dz)
  double max_input_imag;      // largest |Im R| seen: R must be real
  ItoSum process;
};

/// Monte Carlo stochastic Hilbert transform of a real martingale R.
/// Throws kNotReal when |Im R| exceeds 1e-9 times its scale.
HilbertEstimate stochastic_hilbert_mc(const Martingale& R, const PathEnsemble& paths,
                                      const RegressionOptions& opts = {},
                                      const StateProcess* state = nullptr);

/// ||a - b||_2 / ||b||_2 over paths.
double relative_l2_error(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Exponential (outer) forms F = exp(R + i HR) with R = u(zhat).

struct ExpIdentityReport {
  Complex mean_F;
  double exp_mean_R;
  double difference;  // |mean_F - exp_mean_R|
  double stderr_;     // combined standard error of the two estimates
  double max_modulus_error;  // max_p ||F_p| - exp(R_p)|, relative
  bool pass;          // difference <= 3 stderr and modulus identity to 1e-12
};

/// F and R evaluated through u's analytic completion at zhat.
ExpIdentityReport verify_th32(const BoundaryFunction& u, const PathEnsemble& paths);

struct TruncationReport {
  double lambda;
  bool g_bounded;     // |G| <= lambda on the grid
  bool g_dominated;   // |G| <= |F| on the grid
  InequalityCheck distance;   // E|F - G| <= E|F|^2 / lambda
  double e_one_minus_s_sq;    // E|1 - S|^2
  double deficit;             // 1 - E|S|^2
  Complex mean_S;
  InequalityCheck link1;      // E|1 - S|^2 <= 2(1 - Re ES)
  InequalityCheck link2;      // 2(1 - Re ES) <= 2 E(1_A ln(|F| / lambda))
  InequalityCheck link3;      // ... <= (2 / lambda) E(1_A |F|)
  double exp_identity_gap;    // |ES - exp E(Z - R)|
  double exp_identity_stderr;
  bool pass;
};

/// F = e^{i phase} exp(u + i conj(u)) and G = e^{i phase} exp(Z + i conj(Z)) with
/// Z = min(u, ln lambda), both on u's grid and read at the node nearest to
/// each exit point. Throws kInvalidArgument for lambda <= 0.
TruncationReport holomorphic_truncate(const BoundaryFunction& u, double lambda,
                                      const PathEnsemble& paths, double phase = 0.0);

}  // namespace hardy

#endif  // HARDYLAB_WIENER_HPP
