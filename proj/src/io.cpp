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

#include "hardylab/io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardylab/error.hpp"
#include "json_io.hpp"

namespace hardy {
namespace {

double get_double(const Json& j, const char* what) {
  require(j.is_number(), ErrorCode::kParse, std::string(what) + ": expected a number");
  return j.get<double>();
}

std::vector<double> get_doubles(const Json& j, const char* what) {
  require(j.is_array(), ErrorCode::kParse, std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(get_double(x, what));
  return out;
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), ErrorCode::kParse, std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  require(it != j.end(), ErrorCode::kParse, std::string("missing key \"") + key + "\"");
  return *it;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const char* what) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    require(known, ErrorCode::kParse, std::string(what) + ": unknown key \"" + k + "\"");
  }
}

}  // namespace

Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_json(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

Complex complex_from(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  require(j.is_array() && j.size() == 2, ErrorCode::kParse,
          std::string(what) + ": expected a number or [re, im]");
  return {get_double(j[0], what), get_double(j[1], what)};
}

Json parse_json(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string(what) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Json boundary_json(const BoundaryFunction& f) {
  Json re = Json::array(), im = Json::array();
  for (Complex z : f.samples()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  Json j;
  j["n"] = f.size();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

BoundaryFunction boundary_from(const Json& j) {
  reject_unknown(j, {"n", "re", "im"}, "boundary function");
  const Json& nj = field(j, "n");
  require(nj.is_number_unsigned(), ErrorCode::kParse, "boundary function: n must be a count");
  const auto n = nj.get<std::size_t>();
  const auto re = get_doubles(field(j, "re"), "boundary function re");
  std::vector<double> im(n, 0.0);
  if (j.contains("im")) im = get_doubles(j["im"], "boundary function im");
  require(re.size() == n && im.size() == n, ErrorCode::kSizeMismatch,
          "boundary function: re/im lengths differ from n");
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = {re[k], im[k]};
  return BoundaryFunction(std::move(v));
}

std::string to_json(const BoundaryFunction& f) { return boundary_json(f).dump(); }

BoundaryFunction boundary_from_json(const std::string& text) {
  return boundary_from(parse_json(text, "boundary function"));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const BoundaryFunction& f) {
  std::string out = "k,re,im\n";
  for (std::size_t k = 0; k < f.size(); ++k)
    out += std::to_string(k) + "," + format_double(f[k].real()) + "," + format_double(f[k].imag()) + "\n";
  return out;
}

BoundaryFunction boundary_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "k,re,im", ErrorCode::kParse, "CSV header must be k,re,im");
  std::vector<Complex> v;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::size_t k = 0;
    double re = 0.0, im = 0.0;
    char tail = 0;
    require(std::sscanf(line.c_str(), "%zu,%lf,%lf%c", &k, &re, &im, &tail) >= 3 &&
                (tail == 0 || tail == '\r'),
            ErrorCode::kParse, "bad CSV row: " + line);
    require(k == v.size(), ErrorCode::kParse, "CSV rows must be in node order");
    v.emplace_back(re, im);
  }
  return BoundaryFunction(std::move(v));
}

// ---------------------------------------------------------------------------

Json factored_json(const FactoredFunction& f) {
  Json zeros = Json::array(), atoms = Json::array();
  for (Complex a : f.blaschke.zeros) zeros.push_back(complex_json(a));
  for (const auto& a : f.singular.atoms)
    atoms.push_back(Json::array({a.point.real(), a.point.imag(), a.mass}));
  Json j;
  j["zeros"] = std::move(zeros);
  j["atoms"] = std::move(atoms);
  j["log_modulus"] = boundary_json(f.log_modulus);
  j["phase"] = f.phase;
  return j;
}

FactoredFunction factored_from(const Json& j) {
  reject_unknown(j, {"zeros", "atoms", "log_modulus", "phase"}, "factored function");
  FactoredFunction f{{}, {}, boundary_from(field(j, "log_modulus")), 0.0};
  require(f.log_modulus.is_real(0.0), ErrorCode::kNotReal, "log_modulus must be real");
  if (j.contains("zeros")) {
    require(j["zeros"].is_array(), ErrorCode::kParse, "zeros: expected an array");
    for (const auto& z : j["zeros"]) f.blaschke.zeros.push_back(complex_from(z, "zero"));
  }
  if (j.contains("atoms")) {
    require(j["atoms"].is_array(), ErrorCode::kParse, "atoms: expected an array");
    for (const auto& a : j["atoms"]) {
      require(a.is_array() && a.size() == 3, ErrorCode::kParse, "atom: expected [re, im, c]");
      f.singular.atoms.push_back(
          {{get_double(a[0], "atom"), get_double(a[1], "atom")}, get_double(a[2], "atom")});
    }
  }
  if (j.contains("phase")) f.phase = get_double(j["phase"], "phase");
  f.blaschke.validate();
  f.singular.validate();
  return f;
}

std::string to_json(const FactoredFunction& f) { return factored_json(f).dump(); }

FactoredFunction factored_from_json(const std::string& text) {
  return factored_from(parse_json(text, "factored function"));
}

// ---------------------------------------------------------------------------

Json sim_config_json(const SimConfig& c) {
  Json j;
  j["paths"] = c.paths;
  j["dt"] = c.dt;
  j["t_max"] = c.t_max;
  j["seed"] = c.seed;
  j["M"] = c.M;
  j["offset"] = c.offset;
  j["regression_degree"] = c.regression_degree;
  return j;
}

SimConfig sim_config_from(const Json& j, SimConfig c) {
  require(j.is_object(), ErrorCode::kParse, "SimConfig: expected an object");
  reject_unknown(j, {"paths", "dt", "t_max", "seed", "M", "offset", "regression_degree"},
                 "SimConfig");
  auto count = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    require(j[key].is_number_unsigned(), ErrorCode::kParse,
            std::string("SimConfig.") + key + ": expected a nonnegative integer");
    dst = j[key].get<std::remove_reference_t<decltype(dst)>>();
  };
  auto integer = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    require(j[key].is_number_integer(), ErrorCode::kParse,
            std::string("SimConfig.") + key + ": expected an integer");
    dst = j[key].get<int>();
  };
  count("paths", c.paths);
  count("seed", c.seed);
  if (j.contains("dt")) c.dt = get_double(j["dt"], "SimConfig.dt");
  if (j.contains("t_max")) c.t_max = get_double(j["t_max"], "SimConfig.t_max");
  if (j.contains("M")) c.M = get_double(j["M"], "SimConfig.M");
  integer("offset", c.offset);
  integer("regression_degree", c.regression_degree);
  c.validate();
  return c;
}

std::string to_json(const SimConfig& c) { return sim_config_json(c).dump(); }

SimConfig sim_config_from_json(const std::string& text) {
  return sim_config_from(parse_json(text, "SimConfig"));
}

// ---------------------------------------------------------------------------

Json check_json(const InequalityCheck& c) {
  Json j;
  j["name"] = c.name;
  j["lhs"] = num(c.lhs);
  j["rhs"] = num(c.rhs);
  j["stderr"] = num(c.stderr_);
  j["pass"] = c.pass;
  return j;
}

Json estimate_json(const Estimate& e) {
  Json j;
  j["mean"] = num(e.mean);
  j["stderr"] = num(e.stderr_);
  j["stddev"] = num(e.stddev);
  j["count"] = e.count;
  return j;
}

Json decomposition_json(const StoppingDecomposition& d) {
  Json j;
  j["M"] = d.M;
  j["paths"] = d.paths;
  j["levels"] = d.levels;
  j["mean"] = complex_json(d.mean);
  j["level_probability"] = d.level_probability;
  j["eta"] = num(d.eta);
  j["max_step"] = num(d.max_step);
  j["max_jump_ratio"] = num(d.max_jump_ratio);
  j["support_violations"] = d.support_violations;
  j["telescoping_error"] = num(d.telescoping_error);
  j["parseval"] = check_json(d.parseval);
  j["parseval_gap"] = num(d.parseval_gap);
  j["parseval_budget"] = num(d.parseval_budget);
  j["worst_orthogonality_sigmas"] = num(d.worst_orthogonality_sigmas);
  j["orthogonality_pass"] = d.orthogonality_pass;
  j["exact_pass"] = d.exact_pass();
  return j;
}

Json family_json(const TruncationFamily& f) {
  Json j;
  j["M"] = f.M;
  j["offset"] = f.offset;
  j["levels"] = f.levels;
  j["Ew"] = f.Ew;
  j["Ew2"] = f.Ew2;
  j["e_one_minus_w_sq"] = f.e_one_minus_w_sq;
  j["tail_mean"] = f.tail_mean;
  Json chain = Json::array();
  for (std::size_t i = 0; i < f.levels; ++i) {
    Json level;
    level["i"] = i;
    level["link1"] = check_json(f.link1[i]);
    level["link2"] = check_json(f.link2[i]);
    level["link3"] = check_json(f.link3[i]);
    chain.push_back(std::move(level));
  }
  j["chain"] = std::move(chain);
  j["modulus_monotone"] = f.modulus_monotone;
  j["mean_monotone"] = f.mean_monotone;
  j["phased"] = f.phased.has_value();
  if (f.phased) {
    j["phased_levels"] = f.phased_levels;
    j["phase_mean_gap"] = f.phase_mean_gap;
  }
  j["pass"] = f.chain_pass();
  return j;
}

Json basic_estimates_json(const BasicEstimates& b) {
  Json p;
  p["paths"] = b.pointwise.paths;
  p["violations"] = b.pointwise.violations;
  p["worst_ratio"] = num(b.pointwise.worst_ratio);
  p["pass"] = b.pointwise.pass;

  Json i;
  i["lhs"] = num(b.integral.lhs);
  i["rhs"] = num(b.integral.rhs);
  i["stderr"] = num(b.integral.stderr_);
  i["rhs_sharper"] = num(b.integral.rhs_sharper);
  i["ratio"] = num(b.integral.ratio);
  i["ratio_sharper"] = num(b.integral.ratio_sharper);
  i["path_violations"] = b.integral.path_violations;
  i["pass"] = b.integral.pass;

  Json s;
  s["lhs"] = num(b.square.bound);
  s["rhs"] = num(b.square.rhs);
  s["stderr"] = b.square.direct ? num(b.square.direct->stderr_) : num(0.0);
  s["diagonal"] = b.square.diagonal;
  s["near"] = num(b.square.near);
  s["far"] = num(b.square.far);
  s["cauchy_schwarz"] = num(b.square.cauchy_schwarz);
  if (b.square.direct) s["direct"] = estimate_json(*b.square.direct);
  s["pass"] = b.square.pass;

  Json j;
  j["pointwise"] = std::move(p);
  j["integral"] = std::move(i);
  j["square"] = std::move(s);
  j["pass"] = b.pass();
  return j;
}

Json certificate_json(const InterpolationCertificate& c) {
  auto estimate = [](const char* line, const EstimateResult& e) {
    Json j;
    j["line"] = line;
    j["name"] = e.name;
    j["lhs"] = num(e.lhs);
    j["rhs"] = num(e.rhs);
    j["stderr"] = num(e.stderr_);
    j["lhs_normalized"] = num(e.lhs_normalized);
    j["pass"] = e.pass;
    return j;
  };
  Json j;
  j["M"] = c.M;
  j["mode"] = c.mode == InterpMode::kBound ? "bound" : "phase";
  j["estimates"] = Json::array({estimate("theta", c.theta), estimate("h1", c.h1),
                                estimate("hinf", c.hinf)});
  j["seed"] = c.seed;
  j["offset"] = c.offset;
  j["paths"] = c.paths;
  j["t_grid"] = c.t_grid;
  j["norm_F"] = num(c.norm_F);
  j["eta"] = num(c.eta);
  j["theta_bound"] = num(c.theta_bound);
  j["requirement"] = num(c.requirement);
  j["requirement_pass"] = c.requirement_pass;
  j["h1_chain"] = num(c.h1_chain);
  j["constant_h1"] = num(c.constant_h1);
  j["constant_hinf"] = num(c.constant_hinf);
  j["hinf_short_chain"] = num(c.hinf_short_chain);
  j["hinf_short_chain_holds"] = c.hinf_short_chain_holds;
  Json lines = Json::array();
  for (const auto& l : c.lines) {
    Json x;
    x["line"] = l.line;
    x["t"] = l.t;
    x["value"] = num(l.value);
    x["stderr"] = num(l.stderr_);
    lines.push_back(std::move(x));
  }
  j["lines"] = std::move(lines);
  j["pass"] = c.pass();
  return j;
}

Json jones_json(const JonesResult& r) {
  Json j;
  j["residual"] = r.residual;
  j["step_norm"] = r.step_norm;
  j["contract_ratio"] = r.contract_ratio;
  j["constant"] = num(r.constant);
  j["sum_norm"] = num(r.sum_norm);
  j["slope"] = num(r.slope);
  j["violation"] = r.violation ? Json(*r.violation) : Json(nullptr);
  j["exact"] = r.exact;
  j["geometric"] = r.geometric;
  j["norm_bound"] = r.norm_bound;
  j["slope_pass"] = r.slope_pass;
  j["converged"] = r.converged();
  return j;
}

// ---------------------------------------------------------------------------

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::kIo, "cannot open " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    require(static_cast<bool>(out), ErrorCode::kIo, "write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into " + target.string());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hardy
