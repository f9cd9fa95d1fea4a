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

#ifndef HARDYLAB_SRC_FFT_HPP
#define HARDYLAB_SRC_FFT_HPP

#include <complex>
#include <span>

namespace hardy::detail {

// Unnormalized DFT: out_j = sum_k in_k exp(-+2 pi i jk/n), sign - for forward.
void dft(std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out, bool forward);

}  // namespace hardy::detail

#endif  // HARDYLAB_SRC_FFT_HPP
