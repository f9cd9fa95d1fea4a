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

#include "hardylab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "hardylab/error.hpp"

namespace hardy {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_grid_size(std::size_t n) {
  require(is_power_of_two(n) && n >= 8, ErrorCode::kInvalidArgument,
          "grid size must be a power of two >= 8, got " + std::to_string(n));
}

void check_same_size(const BoundaryFunction& a, const BoundaryFunction& b) {
  require(a.size() == b.size(), ErrorCode::kSizeMismatch,
          "boundary functions live on different grids");
}

// exp(sign * i pi j / n), the half-node shift of the midpoint grid.
Complex half_shift(int j, std::size_t n, double sign) {
  return std::polar(1.0, sign * std::numbers::pi * j / static_cast<double>(n));
}

}  // namespace

BoundaryFunction::BoundaryFunction(std::vector<Complex> samples)
    : samples_(std::move(samples)) {
  check_grid_size(samples_.size());
  for (const Complex& v : samples_) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            ErrorCode::kInvalidArgument, "non-finite sample");
  }
}

BoundaryFunction BoundaryFunction::sample(
    std::size_t n, const std::function<Complex(Complex)>& fn) {
  check_grid_size(n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = fn(node(k, n));
  return BoundaryFunction(std::move(v));
}

BoundaryFunction BoundaryFunction::constant(std::size_t n, Complex value) {
  return BoundaryFunction(std::vector<Complex>(n, value));
}

BoundaryFunction BoundaryFunction::from_real(std::span<const double> values) {
  return BoundaryFunction(std::vector<Complex>(values.begin(), values.end()));
}

Complex BoundaryFunction::node(std::size_t k, std::size_t n) {
  return std::polar(1.0, node_angle(k, n));
}

double BoundaryFunction::node_angle(std::size_t k, std::size_t n) {
  return 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
         static_cast<double>(n);
}

bool BoundaryFunction::is_real(double tol) const {
  double scale = 1.0;
  for (const Complex& v : samples_) scale = std::max(scale, std::abs(v));
  return std::all_of(samples_.begin(), samples_.end(), [&](const Complex& v) {
    return std::abs(v.imag()) <= tol * scale;
  });
}

std::vector<double> BoundaryFunction::real_part() const {
  std::vector<double> out(size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [](const Complex& v) { return v.real(); });
  return out;
}

std::vector<double> BoundaryFunction::modulus() const {
  std::vector<double> out(size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [](const Complex& v) { return std::abs(v); });
  return out;
}

Complex BoundaryFunction::integral() const {
  Complex sum = 0.0;
  for (const Complex& v : samples_) sum += v;
  return sum / static_cast<double>(size());
}

BoundaryFunction BoundaryFunction::map(
    const std::function<Complex(Complex)>& fn) const {
  std::vector<Complex> out(size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), fn);
  return BoundaryFunction(std::move(out));
}

BoundaryFunction operator+(const BoundaryFunction& a, const BoundaryFunction& b) {
  check_same_size(a, b);
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return BoundaryFunction(std::move(out));
}

BoundaryFunction operator-(const BoundaryFunction& a, const BoundaryFunction& b) {
  check_same_size(a, b);
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] - b[k];
  return BoundaryFunction(std::move(out));
}

BoundaryFunction operator*(const BoundaryFunction& a, const BoundaryFunction& b) {
  check_same_size(a, b);
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return BoundaryFunction(std::move(out));
}

BoundaryFunction operator*(Complex a, const BoundaryFunction& b) {
  std::vector<Complex> out(b.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * b[k];
  return BoundaryFunction(std::move(out));
}

// ---------------------------------------------------------------------------

Spectrum::Spectrum(std::vector<Complex> coefficients)
    : coeffs_(std::move(coefficients)) {
  check_grid_size(coeffs_.size());
}

Spectrum Spectrum::zeros(std::size_t n) {
  return Spectrum(std::vector<Complex>(n, Complex{}));
}

Complex Spectrum::operator()(int mode) const {
  require(mode >= min_mode() && mode <= max_mode(), ErrorCode::kInvalidArgument,
          "mode out of range");
  return coeffs_[static_cast<std::size_t>(mode - min_mode())];
}

Complex& Spectrum::at(int mode) {
  require(mode >= min_mode() && mode <= max_mode(), ErrorCode::kInvalidArgument,
          "mode out of range");
  return coeffs_[static_cast<std::size_t>(mode - min_mode())];
}

double Spectrum::analyticity_defect() const {
  double neg = 0.0, all = 0.0;
  for (int j = min_mode(); j <= max_mode(); ++j) {
    const double a = std::abs((*this)(j));
    all = std::max(all, a);
    if (j < 0) neg = std::max(neg, a);
  }
  return all == 0.0 ? 0.0 : neg / all;
}

Spectrum to_spectrum(const BoundaryFunction& f) {
  const std::size_t n = f.size();
  std::vector<Complex> x(n);
  detail::dft(f.samples(), x, /*forward=*/true);
  std::vector<Complex> c(n);
  const int half = static_cast<int>(n / 2);
  for (int j = -half; j < half; ++j) {
    const std::size_t src = static_cast<std::size_t>((j + static_cast<int>(n)) % static_cast<int>(n));
    c[static_cast<std::size_t>(j + half)] =
        x[src] * half_shift(j, n, -1.0) / static_cast<double>(n);
  }
  return Spectrum(std::move(c));
}

BoundaryFunction from_spectrum(const Spectrum& s) {
  const std::size_t n = s.size();
  const int half = static_cast<int>(n / 2);
  std::vector<Complex> x(n);
  for (int j = -half; j < half; ++j) {
    const std::size_t dst = static_cast<std::size_t>((j + static_cast<int>(n)) % static_cast<int>(n));
    x[dst] = s(j) * half_shift(j, n, 1.0);
  }
  std::vector<Complex> out(n);
  detail::dft(x, out, /*forward=*/false);
  return BoundaryFunction(std::move(out));
}

// ---------------------------------------------------------------------------

AnalyticBoundaryFunction::AnalyticBoundaryFunction(BoundaryFunction f,
                                                   double tolerance)
    : f_(std::move(f)), spectrum_(to_spectrum(f_)), tolerance_(tolerance) {
  defect_ = spectrum_.analyticity_defect();
  require(defect_ <= tolerance_, ErrorCode::kNotAnalytic,
          "function is not analytic: negative-mode ratio " +
              std::to_string(defect_) + " exceeds " + std::to_string(tolerance_));
  double peak = 0.0;
  for (int j = 0; j <= spectrum_.max_mode(); ++j)
    peak = std::max(peak, std::abs(spectrum_(j)));
  int last = 0;
  for (int j = spectrum_.max_mode(); j >= 0; --j) {
    if (std::abs(spectrum_(j)) > 1e-16 * peak) {
      last = j;
      break;
    }
  }
  taylor_.resize(static_cast<std::size_t>(last) + 1);
  for (int j = 0; j <= last; ++j) taylor_[static_cast<std::size_t>(j)] = spectrum_(j);
}

Complex AnalyticBoundaryFunction::series(Complex z) const {
  Complex acc = 0.0;
  for (auto it = taylor_.rbegin(); it != taylor_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex AnalyticBoundaryFunction::series_derivative(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t j = taylor_.size(); j-- > 1;)
    acc = acc * z + static_cast<double>(j) * taylor_[j];
  return acc;
}

AnalyticBoundaryFunction riesz_project(const BoundaryFunction& f) {
  Spectrum s = to_spectrum(f);
  for (int j = s.min_mode(); j < 0; ++j) s.at(j) = 0.0;
  return AnalyticBoundaryFunction(from_spectrum(s));
}

BoundaryFunction conjugate(const BoundaryFunction& u) {
  require(u.is_real(1e-12), ErrorCode::kNotReal,
          "conjugate function requires real input");
  Spectrum s = to_spectrum(u);
  for (int j = s.min_mode(); j <= s.max_mode(); ++j) {
    if (j == 0 || j == s.min_mode()) {
      s.at(j) = 0.0;
    } else {
      s.at(j) *= Complex(0.0, j > 0 ? -1.0 : 1.0);
    }
  }
  BoundaryFunction v = from_spectrum(s);
  std::vector<Complex> out(v.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = v[k].real();
  return BoundaryFunction(std::move(out));
}

Complex mean_value(const AnalyticBoundaryFunction& f) { return f.spectrum()(0); }

double norm_p(const BoundaryFunction& f, double p) {
  require(p >= 1.0, ErrorCode::kInvalidArgument, "norm_p requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const Complex& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (const Complex& v : f.samples()) sum += std::pow(std::abs(v), p);
  return std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
}

std::vector<double> rearrangement(const BoundaryFunction& f) {
  std::vector<double> r = f.modulus();
  std::sort(r.begin(), r.end(), std::greater<>());
  return r;
}

double lorentz_norm(const BoundaryFunction& f, double p, double q) {
  require(p >= 1.0 && !std::isinf(p), ErrorCode::kInvalidArgument,
          "lorentz_norm requires finite p >= 1");
  require(q >= 1.0, ErrorCode::kInvalidArgument, "lorentz_norm requires q >= 1");
  const std::vector<double> r = rearrangement(f);
  const double n = static_cast<double>(r.size());
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j)
      m = std::max(m, std::pow((static_cast<double>(j) + 1.0) / n, 1.0 / p) * r[j]);
    return m;
  }
  // int_{a}^{b} s^{q/p - 1} ds = (p/q)(b^{q/p} - a^{q/p}).
  const double e = q / p;
  double sum = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double a = static_cast<double>(j) / n;
    const double b = (static_cast<double>(j) + 1.0) / n;
    sum += std::pow(r[j], q) * (std::pow(b, e) - std::pow(a, e));
  }
  return std::pow(sum / e, 1.0 / q);
}

Complex evaluate_interior(const AnalyticBoundaryFunction& f, Complex z,
                          double margin) {
  require(std::abs(z) <= 1.0 - margin, ErrorCode::kDomain,
          "evaluation point too close to the boundary");
  return f.series(z);
}

}  // namespace hardy
