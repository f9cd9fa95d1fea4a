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

// Monte Carlo summaries. Sums are Neumaier-compensated and taken in sample
// order, so results do not depend on how the samples were produced.

#ifndef HARDYLAB_STATS_HPP
#define HARDYLAB_STATS_HPP

#include <span>
#include <string>

namespace hardy {

class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // standard error of the mean
  double stddev = 0.0;
  std::size_t count = 0;
};

Estimate estimate(std::span<const double> samples);

/// One-sided check "E[lhs] <= E[rhs]" from paired samples: passes when
/// mean(rhs - lhs) >= -sigmas * stderr(rhs - lhs).
struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double stderr_ = 0.0;  // of the paired difference
  bool pass = false;
};

InequalityCheck paired_check(std::string name, std::span<const double> lhs,
                             std::span<const double> rhs, double sigmas = 3.0);

/// Deterministic check lhs <= rhs * (1 + rel) + abs.
InequalityCheck exact_check(std::string name, double lhs, double rhs, double rel = 1e-12,
                            double abs = 1e-15);

/// Two-sided Kolmogorov-Smirnov test of samples in [0,1) against the uniform
/// law. Returns the statistic D and the asymptotic p-value.
struct KsResult {
  double statistic;
  double p_value;
};

KsResult ks_uniform(std::span<const double> samples);

}  // namespace hardy

#endif  // HARDYLAB_STATS_HPP
