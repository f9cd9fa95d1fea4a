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

// nlohmann::json conversions used inside the library. Not installed.

#ifndef HARDYLAB_SRC_JSON_IO_HPP
#define HARDYLAB_SRC_JSON_IO_HPP

#include <json.hpp>

#include "hardylab/factorization.hpp"
#include "hardylab/interp.hpp"
#include "hardylab/stats.hpp"
#include "hardylab/stopping.hpp"
#include "hardylab/wiener.hpp"

namespace hardy {

using Json = nlohmann::ordered_json;

// Non-finite doubles become null (JSON has no inf/nan).
Json num(double x);

Json complex_json(Complex z);
Complex complex_from(const Json& j, const char* what);

Json boundary_json(const BoundaryFunction& f);
BoundaryFunction boundary_from(const Json& j);
Json factored_json(const FactoredFunction& f);
FactoredFunction factored_from(const Json& j);
Json sim_config_json(const SimConfig& c);
SimConfig sim_config_from(const Json& j, SimConfig base = {});

Json check_json(const InequalityCheck& c);
Json estimate_json(const Estimate& e);
Json decomposition_json(const StoppingDecomposition& d);
Json family_json(const TruncationFamily& f);
Json basic_estimates_json(const BasicEstimates& b);
Json certificate_json(const InterpolationCertificate& c);
Json jones_json(const JonesResult& r);

/// Parses text, mapping syntax errors to Error(kParse).
Json parse_json(const std::string& text, const char* what);

}  // namespace hardy

#endif  // HARDYLAB_SRC_JSON_IO_HPP
