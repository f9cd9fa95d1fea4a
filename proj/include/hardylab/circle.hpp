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

// Sampled functions on the unit circle and their spectral calculus.
//
// A BoundaryFunction holds N samples on the midpoint grid
//   t_k = exp(2 pi i (k + 1/2) / N),   k = 0..N-1,
// with integration against normalized arc length taken as the plain average
// of the samples. The grid never contains t = 1 or t = -1, so functions such
// as 1 + t have a finite logarithm at every node.
//
// The Spectrum of a BoundaryFunction is the trigonometric interpolant
//   f(t_k) = sum_{j=-N/2}^{N/2-1} c_j t_k^j.
// Negative modes (including the Nyquist mode -N/2) are treated as
// anti-analytic.

#ifndef HARDYLAB_CIRCLE_HPP
#define HARDYLAB_CIRCLE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class BoundaryFunction {
 public:
  /// Throws Error(kInvalidArgument) unless the size is a power of two >= 8
  /// and every sample is finite.
  explicit BoundaryFunction(std::vector<Complex> samples);

  /// Samples fn(t_k) on the n-point midpoint grid.
  static BoundaryFunction sample(std::size_t n,
                                 const std::function<Complex(Complex)>& fn);
  static BoundaryFunction constant(std::size_t n, Complex value);
  static BoundaryFunction from_real(std::span<const double> values);

  static Complex node(std::size_t k, std::size_t n);
  static double node_angle(std::size_t k, std::size_t n);  // in (0, 2 pi)

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const Complex> samples() const noexcept { return samples_; }
  Complex operator[](std::size_t k) const { return samples_[k]; }

  bool is_real(double tol = 1e-12) const;
  std::vector<double> real_part() const;
  std::vector<double> modulus() const;

  /// Plain average of the samples, i.e. the integral against dm.
  Complex integral() const;

  BoundaryFunction map(const std::function<Complex(Complex)>& fn) const;

  friend BoundaryFunction operator+(const BoundaryFunction& a,
                                    const BoundaryFunction& b);
  friend BoundaryFunction operator-(const BoundaryFunction& a,
                                    const BoundaryFunction& b);
  // Node-wise product.
  friend BoundaryFunction operator*(const BoundaryFunction& a,
                                    const BoundaryFunction& b);
  friend BoundaryFunction operator*(Complex a, const BoundaryFunction& b);

 private:
  std::vector<Complex> samples_;
};

class Spectrum {
 public:
  /// coefficients[j + N/2] holds c_j for j in [-N/2, N/2).
  explicit Spectrum(std::vector<Complex> coefficients);
  static Spectrum zeros(std::size_t n);

  std::size_t size() const noexcept { return coeffs_.size(); }
  int min_mode() const noexcept { return -static_cast<int>(size() / 2); }
  int max_mode() const noexcept { return static_cast<int>(size() / 2) - 1; }

  Complex operator()(int mode) const;
  Complex& at(int mode);
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  /// max_{j<0} |c_j| / max_j |c_j|; zero for the zero spectrum.
  double analyticity_defect() const;

 private:
  std::vector<Complex> coeffs_;
};

Spectrum to_spectrum(const BoundaryFunction& f);
BoundaryFunction from_spectrum(const Spectrum& s);

/// A BoundaryFunction whose negative modes are negligible relative to its
/// largest mode. Construction checks defect <= tolerance.
class AnalyticBoundaryFunction {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  explicit AnalyticBoundaryFunction(BoundaryFunction f,
                                    double tolerance = kDefaultTolerance);

  const BoundaryFunction& boundary() const noexcept { return f_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  std::size_t size() const noexcept { return f_.size(); }
  Complex operator[](std::size_t k) const { return f_[k]; }

  double tolerance() const noexcept { return tolerance_; }
  double defect() const noexcept { return defect_; }

  /// c_j for j >= 0 with trailing coefficients below 1e-16 * max|c| dropped.
  std::span<const Complex> taylor() const noexcept { return taylor_; }

  /// Power series sum_{j>=0} c_j z^j on the closed disk, no margin check.
  Complex series(Complex z) const;
  /// d/dz of series(z).
  Complex series_derivative(Complex z) const;

 private:
  BoundaryFunction f_;
  Spectrum spectrum_;
  std::vector<Complex> taylor_;
  double tolerance_;
  double defect_;
};

/// Zeroes the negative modes (c_j, j < 0).
AnalyticBoundaryFunction riesz_project(const BoundaryFunction& f);

/// Conjugate function of a real u: c_j -> -i sgn(j) c_j with c_0 and the
/// Nyquist mode sent to zero. Output is real. Throws kNotReal.
BoundaryFunction conjugate(const BoundaryFunction& u);

/// Value at the origin, c_0.
Complex mean_value(const AnalyticBoundaryFunction& f);

/// Quadrature L^p norm, p in [1, inf]; p = inf is the max over nodes.
double norm_p(const BoundaryFunction& f, double p);

/// |samples| sorted in decreasing order; value j is f*(s) on [j/N, (j+1)/N).
std::vector<double> rearrangement(const BoundaryFunction& f);

/// (int_0^1 (s^{1/p} f*(s))^q ds/s)^{1/q} with the step-function f*
/// integrated exactly. q = inf gives sup_s s^{1/p} f*(s).
double lorentz_norm(const BoundaryFunction& f, double p, double q);

/// sum_{j>=0} c_j z^j for |z| <= 1 - margin. Throws kDomain otherwise.
Complex evaluate_interior(const AnalyticBoundaryFunction& f, Complex z,
                          double margin = 1e-6);

}  // namespace hardy

#endif  // HARDYLAB_CIRCLE_HPP
