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

// Reference computations that share no code with the library.

#ifndef HARDYLAB_TESTS_ORACLES_HPP
#define HARDYLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

inline cplx node(std::size_t k, std::size_t n) {
  return std::polar(1.0, 2.0 * kPi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
}

// O(N^2) Fourier coefficient c_j = (1/N) sum_k f_k conj(t_k)^j.
inline cplx coefficient(std::span<const cplx> f, int j) {
  const std::size_t n = f.size();
  cplx acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) acc += f[k] * std::pow(std::conj(node(k, n)), j);
  return acc / static_cast<double>(n);
}

inline double integrate(const std::function<double(double)>& fn, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(fn, a, b, 15, 1e-14);
}

// For integrands with an integrable endpoint singularity.
inline double integrate_singular(const std::function<double(double)>& fn, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate([&](double x) { return fn(x); }, a, b, 1e-13);
}

// (1/N) sum |f_k|^p by a plain loop.
inline double lp_norm(std::span<const cplx> f, double p) {
  double acc = 0.0;
  for (const cplx& v : f) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(f.size()), 1.0 / p);
}

inline std::vector<cplx> random_zeros(std::mt19937_64& rng, std::size_t count,
                                      double rmax = 0.9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> z(count);
  for (auto& a : z) a = std::polar(rmax * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
  return z;
}

// Blaschke product by the textbook formula, normalized so that a zero at
// the origin contributes the factor z.
inline cplx blaschke(const std::vector<cplx>& zeros, cplx z) {
  cplx acc = 1.0;
  for (const cplx& a : zeros) {
    if (a == 0.0) {
      acc *= z;
      continue;
    }
    acc *= (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
  }
  return acc;
}

}  // namespace oracle

#endif  // HARDYLAB_TESTS_ORACLES_HPP
