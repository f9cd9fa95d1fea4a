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

// Test-function families shared by the experiments and the acceptance suite.

#ifndef HARDYLAB_CORPUS_HPP
#define HARDYLAB_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hardylab/circle.hpp"

namespace hardy {

struct NamedFunction {
  std::string id;
  AnalyticBoundaryFunction f;
};

/// sum_j c_j t^j sampled on the n-point grid.
AnalyticBoundaryFunction polynomial(std::size_t n, const std::vector<Complex>& coefficients);

/// exp(c t).
AnalyticBoundaryFunction exponential(std::size_t n, Complex c);

/// Riesz projection of (1 - t)^{-a}; in H^p for a p < 1.
AnalyticBoundaryFunction power_singularity(std::size_t n, double a);

/// c0 + sum_j (cos_j cos(j theta) + sin_j sin(j theta)), j >= 1.
BoundaryFunction trigonometric(std::size_t n, double c0, const std::vector<double>& cos,
                               const std::vector<double>& sin);

struct SchurCorpusOptions {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::size_t n = 4096;
  std::size_t max_zeros = 12;
  double max_radius = 0.9;
};

/// Cycles through finite Blaschke products, outer functions with modulus
/// exp(-v) for a random nonnegative trigonometric v, and their products.
/// Every member is rotated to s(0) > 0.
std::vector<NamedFunction> schur_corpus(const SchurCorpusOptions& opts);

/// (1 + t)^2, 1 + t, exp(t) and 2 + t^3, each scaled to unit L^2 norm.
std::vector<NamedFunction> embedded_corpus(std::size_t n = 64);

/// f / ||f||_2; returns the scale through `scale` when given.
AnalyticBoundaryFunction normalize_l2(const AnalyticBoundaryFunction& f, double* scale = nullptr);

}  // namespace hardy

#endif  // HARDYLAB_CORPUS_HPP
