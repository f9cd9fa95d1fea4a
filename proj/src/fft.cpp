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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "hardylab/error.hpp"

namespace hardy::detail {
namespace {

// The FFTW planner is not thread-safe; fftw_execute_dft on an existing plan is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, bool forward) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, forward);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<fftw_complex> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(n, a.data(), b.data(),
                                      forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    require(plan != nullptr, ErrorCode::kInvalidArgument, "fftw planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void dft(std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out, bool forward) {
  require(in.size() == out.size(), ErrorCode::kSizeMismatch, "dft size mismatch");
  const int n = static_cast<int>(in.size());
  fftw_plan plan = cache().get(n, forward);
  // FFTW does not write to the input of an out-of-place complex transform.
  auto* src = reinterpret_cast<fftw_complex*>(
      const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace hardy::detail
