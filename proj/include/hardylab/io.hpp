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

// Text formats. Doubles are written so that parsing gives back the same bits
// (shortest round-trip form in JSON, %.17g in CSV). Parse errors throw
// Error(kParse); well-formed but invalid content throws the validator's code.
//
//   BoundaryFunction  {"n": N, "re": [...], "im": [...]}   CSV: k,re,im
//   FactoredFunction  {"zeros": [[re,im],...], "atoms": [[re,im,c],...],
//                      "log_modulus": <BoundaryFunction>, "phase": c}
//   SimConfig         {"paths", "dt", "t_max", "seed", "M", "offset",
//                      "regression_degree"}; missing keys keep defaults

#ifndef HARDYLAB_IO_HPP
#define HARDYLAB_IO_HPP

#include <string>

#include "hardylab/circle.hpp"
#include "hardylab/factorization.hpp"
#include "hardylab/wiener.hpp"

namespace hardy {

std::string to_json(const BoundaryFunction& f);
BoundaryFunction boundary_from_json(const std::string& text);
std::string to_csv(const BoundaryFunction& f);
BoundaryFunction boundary_from_csv(const std::string& text);

std::string to_json(const FactoredFunction& f);
FactoredFunction factored_from_json(const std::string& text);

std::string to_json(const SimConfig& c);
SimConfig sim_config_from_json(const std::string& text);

/// %.17g
std::string format_double(double x);

/// Writes through a temporary file in the same directory and renames it into
/// place. Throws kIo.
void write_file_atomic(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace hardy

#endif  // HARDYLAB_IO_HPP
