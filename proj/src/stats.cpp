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

#include "hardylab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hardylab/error.hpp"

namespace hardy {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

Estimate estimate(std::span<const double> samples) {
  Estimate e;
  e.count = samples.size();
  if (samples.empty()) return e;
  CompensatedSum s;
  for (double x : samples) s.add(x);
  e.mean = s.value() / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    CompensatedSum v;
    for (double x : samples) v.add((x - e.mean) * (x - e.mean));
    e.stddev = std::sqrt(v.value() / static_cast<double>(samples.size() - 1));
    e.stderr_ = e.stddev / std::sqrt(static_cast<double>(samples.size()));
  }
  return e;
}

InequalityCheck paired_check(std::string name, std::span<const double> lhs,
                             std::span<const double> rhs, double sigmas) {
  require(lhs.size() == rhs.size() && !lhs.empty(), ErrorCode::kSizeMismatch,
          "paired_check needs equally sized, nonempty samples");
  std::vector<double> diff(lhs.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rhs[i] - lhs[i];
  const Estimate d = estimate(diff);
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = estimate(lhs).mean;
  c.rhs = estimate(rhs).mean;
  c.stderr_ = d.stderr_;
  c.pass = d.mean >= -sigmas * d.stderr_;
  return c;
}

InequalityCheck exact_check(std::string name, double lhs, double rhs, double rel,
                            double abs) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.stderr_ = 0.0;
  c.pass = lhs <= rhs * (1.0 + rel) + abs;
  return c;
}

KsResult ks_uniform(std::span<const double> samples) {
  require(!samples.empty(), ErrorCode::kInvalidArgument, "KS test on empty sample");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - x[i], x[i] - lo});
  }
  // Kolmogorov limit law with the Stephens small-sample correction.
  const double sq = std::sqrt(n);
  const double lam = (sq + 0.12 + 0.11 / sq) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
    p += term;
    if (std::abs(term) < 1e-16) break;
  }
  p = std::clamp(p, 0.0, 1.0);
  if (lam < 0.2) p = 1.0;
  return KsResult{d, p};
}

}  // namespace hardy
