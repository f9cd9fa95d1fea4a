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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "hardylab/error.hpp"
#include "hardylab/factorization.hpp"
#include "hardylab/io.hpp"
#include "hardylab/marcinkiewicz.hpp"
#include "hardylab/stopping.hpp"

namespace hardy {
namespace {

const std::vector<std::string> kCommands = {"decompose", "lemma12",     "kfunc",
                                            "simulate",  "interpolate", "oracle"};

bool stochastic(const std::string& c) {
  return c == "simulate" || c == "interpolate" || c == "oracle";
}

bool uses_sim(const std::string& c) { return stochastic(c); }

// ---------------------------------------------------------------------------
// config parsing

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); }

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) throw Error(ErrorCode::kParse, what + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(what + ": must be finite");
  return x;
}

std::size_t count(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned()) throw Error(ErrorCode::kParse, what + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string text(const Json& j, const std::string& what) {
  if (!j.is_string()) throw Error(ErrorCode::kParse, what + ": expected a string");
  return j.get<std::string>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) throw Error(ErrorCode::kParse, what + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      throw Error(ErrorCode::kParse, what + ": unknown key \"" + k + "\"");
  }
}

// Array of numbers, or {"lo": a, "hi": b, "per_octave": k} for 2^{j/k}.
std::vector<double> grid(const Json& j, const std::string& what) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(number(x, what));
  } else {
    only_keys(j, {"lo", "hi", "per_octave"}, what);
    if (!j.contains("lo") || !j.contains("hi"))
      throw Error(ErrorCode::kParse, what + ": geometric grid needs lo and hi");
    const auto lo = j["lo"], hi = j["hi"];
    if (!lo.is_number_integer() || !hi.is_number_integer())
      throw Error(ErrorCode::kParse, what + ": lo and hi must be integers");
    const int ppo = j.contains("per_octave") ? static_cast<int>(count(j["per_octave"], what)) : 1;
    if (ppo < 1 || lo.get<int>() > hi.get<int>() || hi.get<int>() - lo.get<int>() > 200)
      bad(what + ": bad geometric grid");
    out = geometric_lambda_grid(lo.get<int>(), hi.get<int>(), ppo);
  }
  if (out.empty()) bad(what + ": empty grid");
  return out;
}

std::vector<double> powers_of_two(int lo, int hi) { return geometric_lambda_grid(lo, hi, 1); }

std::string function_id(const Json& spec, const std::string& family, std::size_t i) {
  if (spec.contains("id")) return text(spec["id"], "corpus id");
  return family + "-" + std::to_string(i);
}

AnalyticBoundaryFunction analytic_from(const Json& s, std::size_t n, const std::string& where) {
  const std::string family = text(s.contains("family") ? s["family"] : Json(), where + ".family");
  if (family == "poly") {
    only_keys(s, {"id", "family", "coefficients"}, where);
    if (!s.contains("coefficients") || !s["coefficients"].is_array())
      throw Error(ErrorCode::kParse, where + ": poly needs a coefficients array");
    std::vector<Complex> c;
    for (const auto& x : s["coefficients"]) c.push_back(complex_from(x, "coefficient"));
    return polynomial(n, c);
  }
  if (family == "exp") {
    only_keys(s, {"id", "family", "c"}, where);
    return exponential(n, s.contains("c") ? complex_from(s["c"], "c") : Complex(1.0));
  }
  if (family == "power_singularity") {
    only_keys(s, {"id", "family", "a"}, where);
    if (!s.contains("a")) throw Error(ErrorCode::kParse, where + ": missing a");
    return power_singularity(n, number(s["a"], where + ".a"));
  }
  if (family == "factored") {
    only_keys(s, {"id", "family", "factored"}, where);
    if (!s.contains("factored")) throw Error(ErrorCode::kParse, where + ": missing factored");
    const FactoredFunction f = factored_from(s["factored"]);
    if (f.log_modulus.size() != n) bad(where + ": log_modulus size differs from N");
    return synthesize(f);
  }
  if (family == "samples") {
    only_keys(s, {"id", "family", "function", "tolerance"}, where);
    if (!s.contains("function")) throw Error(ErrorCode::kParse, where + ": missing function");
    const double tol = s.contains("tolerance") ? number(s["tolerance"], where + ".tolerance")
                                               : AnalyticBoundaryFunction::kDefaultTolerance;
    return AnalyticBoundaryFunction(boundary_from(s["function"]), tol);
  }
  bad(where + ": unknown analytic family \"" + family + "\"");
}

BoundaryFunction real_from(const Json& s, std::size_t n, const std::string& where) {
  const std::string family = text(s.contains("family") ? s["family"] : Json(), where + ".family");
  if (family == "trig") {
    only_keys(s, {"id", "family", "c0", "cos", "sin"}, where);
    std::vector<double> c, sn;
    if (s.contains("cos")) c = grid(s["cos"], where + ".cos");
    if (s.contains("sin")) sn = grid(s["sin"], where + ".sin");
    return trigonometric(n, s.contains("c0") ? number(s["c0"], where + ".c0") : 0.0, c, sn);
  }
  if (family == "samples") {
    only_keys(s, {"id", "family", "function"}, where);
    if (!s.contains("function")) throw Error(ErrorCode::kParse, where + ": missing function");
    BoundaryFunction u = boundary_from(s["function"]);
    if (!u.is_real(0.0)) throw Error(ErrorCode::kNotReal, where + ": samples must be real");
    return u;
  }
  bad(where + ": unknown real family \"" + family + "\"");
}

Json default_real_corpus() {
  return Json::parse(R"([
    {"id": "cos", "family": "trig", "cos": [1.2]},
    {"id": "mixed", "family": "trig", "cos": [0.8], "sin": [0.0, 0.5]},
    {"id": "triple", "family": "trig", "c0": 0.2, "cos": [0.5, 0.0, -0.4]}
  ])");
}

Json default_corpus(const std::string& cmd) {
  if (cmd == "decompose" || cmd == "kfunc")
    return Json::parse(R"([
      {"id": "one_plus_t", "family": "poly", "coefficients": [1, 1]},
      {"id": "singular", "family": "power_singularity", "a": 0.2}
    ])");
  if (cmd == "oracle")
    return Json::parse(R"([
      {"id": "square", "family": "poly", "coefficients": [1, 2, 1]},
      {"id": "octic", "family": "poly",
       "coefficients": [1, 0.5, [0, 0.4], -0.3, 0.25, [0.2, -0.1], 0.15, -0.1, 0.1]}
    ])");
  if (cmd == "lemma12") return Json::array();
  return Json();  // Wiener commands use embedded_corpus()
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& raw, const std::string& command,
                                         std::optional<std::uint64_t> seed_override) {
  const Json j = parse_json(raw, "config");
  only_keys(j,
            {"command", "seed", "N", "format", "corpus", "real_corpus", "schur", "lambda_grid",
             "q_grid", "p_grid", "theta_grid", "t_grid", "sim", "regression", "mode",
             "phase_paths", "jones_steps", "checkpoint"},
            "config");
  ExperimentConfig c;
  c.command = command;
  if (j.contains("command")) {
    const std::string named = text(j["command"], "command");
    if (!c.command.empty() && c.command != named)
      bad("command \"" + c.command + "\" does not match the config's \"" + named + "\"");
    c.command = named;
  }
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end())
    bad("unknown command \"" + c.command + "\"");
  const std::string& cmd = c.command;

  if (j.contains("seed")) c.seed = count(j["seed"], "seed");
  if (seed_override) c.seed = seed_override;

  const bool wiener = uses_sim(cmd);
  c.n = j.contains("N") ? count(j["N"], "N") : (wiener ? 64 : 4096);
  if (c.n < 8 || (c.n & (c.n - 1)) != 0) bad("N must be a power of two >= 8");
  if (j.contains("format")) c.format = text(j["format"], "format");
  if (c.format != "json" && c.format != "csv") bad("format must be json or csv");

  // corpora
  const Json spec = j.contains("corpus") ? j["corpus"] : default_corpus(cmd);
  if (!spec.is_null()) {
    if (!spec.is_array()) throw Error(ErrorCode::kParse, "corpus: expected an array");
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const std::string where = "corpus[" + std::to_string(i) + "]";
      if (!spec[i].is_object()) throw Error(ErrorCode::kParse, where + ": expected an object");
      c.corpus.push_back({function_id(spec[i], text(spec[i].value("family", Json("")), where), i),
                          analytic_from(spec[i], c.n, where)});
    }
  } else {
    c.corpus = embedded_corpus(c.n);
  }
  if (cmd == "simulate" || cmd == "oracle") {
    const Json rs = j.contains("real_corpus") ? j["real_corpus"] : default_real_corpus();
    if (!rs.is_array()) throw Error(ErrorCode::kParse, "real_corpus: expected an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const std::string where = "real_corpus[" + std::to_string(i) + "]";
      if (!rs[i].is_object()) throw Error(ErrorCode::kParse, where + ": expected an object");
      c.real_corpus.push_back({function_id(rs[i], text(rs[i].value("family", Json("")), where), i),
                               real_from(rs[i], c.n, where)});
    }
  } else if (j.contains("real_corpus")) {
    bad("real_corpus is used only by simulate and oracle");
  }

  if (cmd == "lemma12") {
    if (j.contains("schur") || !j.contains("corpus")) {
      SchurCorpusOptions o;
      o.n = c.n;
      if (j.contains("schur")) {
        const Json& s = j["schur"];
        only_keys(s, {"count", "max_zeros", "max_radius"}, "schur");
        if (s.contains("count")) o.count = count(s["count"], "schur.count");
        if (s.contains("max_zeros")) o.max_zeros = count(s["max_zeros"], "schur.max_zeros");
        if (s.contains("max_radius")) o.max_radius = number(s["max_radius"], "schur.max_radius");
      }
      if (o.count == 0 || o.max_zeros == 0 || !(o.max_radius > 0.0 && o.max_radius < 0.99))
        bad("schur: count and max_zeros must be positive, 0 < max_radius < 0.99");
      if (!c.seed) bad("lemma12 with a generated Schur corpus needs a seed");
      o.seed = *c.seed;
      c.schur = o;
    }
    if (c.corpus.empty() && !c.schur) bad("lemma12: empty corpus");
  } else if (j.contains("schur")) {
    bad("schur is used only by lemma12");
  }
  if (c.corpus.empty() && cmd != "lemma12") bad("corpus must not be empty");

  // grids
  auto take = [&](const char* key, std::vector<double> fallback) {
    return j.contains(key) ? grid(j[key], key) : fallback;
  };
  c.lambda_grid = take("lambda_grid", cmd == "simulate" ? std::vector<double>{0.5, 1, 1.5, 2, 3}
                                      : cmd == "kfunc"  ? geometric_lambda_grid()
                                                        : powers_of_two(-3, 4));
  c.p_grid = take("p_grid", {1.5, 2.0, 4.0});
  c.q_grid = take("q_grid", cmd == "kfunc" ? std::vector<double>{1.0, 2.0}
                                           : std::vector<double>{1.25, 1.5, 2.0, 3.0});
  c.theta_grid = take("theta_grid", {0.25, 0.5, 0.75});
  c.t_grid = take("t_grid", cmd == "kfunc" ? powers_of_two(-6, 6)
                                           : std::vector<double>{0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0});
  for (double l : c.lambda_grid)
    if (!(l > 0.0)) bad("lambda_grid entries must be positive");
  for (double p : c.p_grid)
    if (!(p > 1.0)) bad("p_grid entries must exceed 1");
  for (double q : c.q_grid)
    if (cmd == "kfunc" ? !(q >= 1.0) : !(q > 1.0)) bad("q_grid entries out of range");
  for (double th : c.theta_grid)
    if (!(th > 0.0 && th < 1.0)) bad("theta_grid entries must lie in (0, 1)");
  if (cmd == "kfunc")
    for (double t : c.t_grid)
      if (!(t > 0.0)) bad("t_grid entries must be positive for kfunc");

  // Wiener side
  if (wiener) {
    if (!c.seed) bad(cmd + " is stochastic and needs a seed");
    if (j.contains("sim")) c.sim = sim_config_from(j["sim"]);
    c.sim.seed = *c.seed;
    c.sim.validate();
    c.regression.degree = c.sim.regression_degree;
    if (j.contains("regression")) {
      const Json& r = j["regression"];
      only_keys(r, {"degree", "stride"}, "regression");
      if (r.contains("degree")) c.regression.degree = static_cast<int>(count(r["degree"], "regression.degree"));
      if (r.contains("stride")) c.regression.stride = count(r["stride"], "regression.stride");
      if (c.regression.degree > 16 || c.regression.stride == 0) bad("regression: degree <= 16, stride >= 1");
    }
    for (const auto& f : c.corpus)
      if (f.f.taylor().size() > 64)
        bad("corpus function " + f.id + " has more than 64 Taylor coefficients; not embeddable");
  } else {
    for (const char* key : {"sim", "regression"})
      if (j.contains(key)) bad(std::string(key) + " is used only by Wiener-space commands");
  }
  if (j.contains("mode")) {
    if (cmd != "interpolate") bad("mode is used only by interpolate");
    c.mode = text(j["mode"], "mode");
    if (c.mode != "bound" && c.mode != "phase" && c.mode != "both") bad("mode must be bound, phase or both");
  }
  if (j.contains("phase_paths")) c.phase_paths = count(j["phase_paths"], "phase_paths");
  if (j.contains("jones_steps")) c.jones_steps = count(j["jones_steps"], "jones_steps");
  if (c.phase_paths == 0 || c.jones_steps > 30) bad("phase_paths >= 1 and jones_steps <= 30");
  if (j.contains("checkpoint")) {
    if (cmd != "simulate") bad("checkpoint is used only by simulate");
    c.checkpoint = text(j["checkpoint"], "checkpoint");
    if (c.checkpoint != "none" && c.checkpoint != "binary" && c.checkpoint != "csv")
      bad("checkpoint must be none, binary or csv");
  }

  // effective config
  Json& e = c.echo;
  e["command"] = cmd;
  e["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  e["N"] = c.n;
  e["format"] = c.format;
  e["corpus"] = spec.is_null() ? Json("default embedded corpus") : spec;
  if (!c.real_corpus.empty()) e["real_corpus"] = j.contains("real_corpus") ? j["real_corpus"] : default_real_corpus();
  if (c.schur) {
    e["schur"] = {{"count", c.schur->count}, {"max_zeros", c.schur->max_zeros},
                  {"max_radius", c.schur->max_radius}};
  }
  e["lambda_grid"] = c.lambda_grid;
  e["p_grid"] = c.p_grid;
  e["q_grid"] = c.q_grid;
  e["theta_grid"] = c.theta_grid;
  e["t_grid"] = c.t_grid;
  if (wiener) {
    e["sim"] = sim_config_json(c.sim);
    e["regression"] = {{"degree", c.regression.degree}, {"stride", c.regression.stride}};
  }
  if (cmd == "interpolate") {
    e["mode"] = c.mode;
    e["phase_paths"] = c.phase_paths;
    e["jones_steps"] = c.jones_steps;
  }
  if (cmd == "simulate") e["checkpoint"] = c.checkpoint;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

class Run {
 public:
  explicit Run(const ExperimentConfig& c) : cfg(c) {
    report.command = c.command;
    report.json["command"] = c.command;
    report.json["config"] = c.echo;
  }

  void check(std::string section, std::string subject, std::string name, double lhs, double rhs,
             double se, bool pass) {
    report.checks.push_back({std::move(section), std::move(subject), std::move(name), lhs, rhs, se, pass});
  }
  void check(std::string section, std::string subject, const InequalityCheck& c) {
    check(std::move(section), std::move(subject), c.name, c.lhs, c.rhs, c.stderr_, c.pass);
  }

  // CSV of the check list, used when a command has no table of its own.
  std::string checks_csv() const {
    std::string out = "section,subject,check,lhs,rhs,stderr,pass\n";
    for (const auto& r : report.checks)
      out += r.section + "," + r.subject + "," + quote(r.name) + "," + format_double(r.lhs) + "," +
             format_double(r.rhs) + "," + format_double(r.stderr_) + "," + (r.pass ? "1" : "0") + "\n";
    return out;
  }

  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  }

  ExperimentReport finish() {
    std::size_t passed = 0;
    Json checks = Json::array();
    for (const auto& r : report.checks) {
      passed += r.pass;
      checks.push_back({{"section", r.section}, {"subject", r.subject}, {"name", r.name},
                        {"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}, {"stderr", num(r.stderr_)},
                        {"pass", r.pass}});
    }
    report.pass = passed == report.checks.size();
    report.json["pass"] = report.pass;
    report.json["checks"] = std::move(checks);
    if (report.csv.empty()) report.csv = checks_csv();

    char head[160];
    std::snprintf(head, sizeof head, "hardylab %s: %s (%zu/%zu checks passed)\n", cfg.command.c_str(),
                  report.pass ? "PASS" : "FAIL", passed, report.checks.size());
    std::string s = head;
    if (cfg.seed) s += "seed " + std::to_string(*cfg.seed) + "\n";
    for (const auto& r : report.checks) {
      char line[512];
      std::snprintf(line, sizeof line, "  [%s] %s / %s: %s  lhs=%.6g rhs=%.6g se=%.3g\n",
                    r.pass ? "ok" : "FAIL", r.section.c_str(), r.subject.c_str(), r.name.c_str(),
                    r.lhs, r.rhs, r.stderr_);
      s += line;
    }
    for (const auto& n : notes) s += "  note: " + n + "\n";
    report.summary = s;
    return std::move(report);
  }

  const ExperimentConfig& cfg;
  ExperimentReport report;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------

void run_decompose(Run& run) {
  const auto& c = run.cfg;
  std::string csv = "function,p,lambda,f0_l1,constant,bound,ratio,s0,s0_difference,pass\n";
  Json sweeps = Json::array();
  for (const auto& f : c.corpus) {
    for (double p : c.p_grid) {
      const LambdaSweep sweep = theorem11_sweep(f.f, p, c.lambda_grid);
      double worst_ratio = 0.0, worst_s0 = 0.0;
      Json rows = Json::array();
      for (const auto& r : sweep.rows) {
        DecomposeOptions opts;
        opts.normalize = true;
        const SZeroTwoWays two = s_zero_two_ways(decompose(f.f, r.lambda, p, opts));
        worst_ratio = std::max(worst_ratio, r.ratio);
        worst_s0 = std::max(worst_s0, two.difference);
        rows.push_back({{"lambda", r.lambda}, {"f0_l1", num(r.f0_l1)}, {"constant", num(r.constant)},
                        {"bound", num(r.bound)}, {"ratio", num(r.ratio)}, {"s0", num(r.s0)},
                        {"s0_formula", num(two.formula)}, {"s0_difference", num(two.difference)},
                        {"pass", r.pass}});
        csv += Run::quote(f.id) + "," + format_double(p) + "," + format_double(r.lambda) + "," +
               format_double(r.f0_l1) + "," + format_double(r.constant) + "," +
               format_double(r.bound) + "," + format_double(r.ratio) + "," + format_double(r.s0) +
               "," + format_double(two.difference) + "," + (r.pass ? "1" : "0") + "\n";
      }
      const std::string subject = f.id + " p=" + format_double(p);
      run.check("theorem", subject, "max ||f0||_1 / (C_p lambda^(1-p)) <= 1", worst_ratio, 1.0, 0.0,
                sweep.bounds_pass);
      const bool fitted = std::isfinite(sweep.tail_slope);
      run.check("theorem", subject, "tail slope <= 1 - p + 0.1", fitted ? sweep.tail_slope : 0.0,
                sweep.slope_limit, 0.0, sweep.slope_pass);
      if (!fitted) run.notes.push_back(subject + ": fewer than two tail points, slope check vacuous");
      run.check("theorem", subject, "||f0||_1 nonincreasing, ||f1||_inf nondecreasing", 0.0, 0.0,
                0.0, sweep.monotone);
      run.check("theorem", subject, "s(0) two ways agree within 1e-5", worst_s0, 1e-5, 0.0,
                worst_s0 <= 1e-5);
      sweeps.push_back({{"function", f.id}, {"p", p}, {"tail_slope", num(sweep.tail_slope)},
                        {"slope_limit", num(sweep.slope_limit)}, {"bounds_pass", sweep.bounds_pass},
                        {"slope_pass", sweep.slope_pass}, {"monotone", sweep.monotone},
                        {"rows", std::move(rows)}});
    }
  }
  run.report.json["sweeps"] = std::move(sweeps);
  run.report.csv = csv;
}

void run_lemma12(Run& run) {
  const auto& c = run.cfg;
  std::vector<NamedFunction> corpus;
  for (const auto& f : c.corpus) {
    // rotate to s(0) >= 0 unless s(0) vanishes
    const Complex s0 = mean_value(f.f);
    corpus.push_back({f.id, std::abs(s0) > 1e-12 ? make_schur_positive(f.f) : f.f});
  }
  if (c.schur) {
    auto generated = schur_corpus(*c.schur);
    std::move(generated.begin(), generated.end(), std::back_inserter(corpus));
  }
  std::string csv = "corpus_id,q,lhs,rhs,ratio,constant,s0,pass\n";
  Json rows = Json::array();
  for (double q : c.q_grid) {
    double worst = 0.0;
    std::size_t failures = 0, vanishing = 0;
    for (const auto& f : corpus) {
      const Lemma12Report r = lemma12_report(f.f, q);
      worst = std::max(worst, r.ratio);
      failures += !r.pass;
      vanishing += r.s0_vanishes;
      rows.push_back({{"op", "lemma12"}, {"corpus_id", f.id}, {"q", q}, {"lhs", num(r.lhs)},
                      {"rhs", num(r.rhs)}, {"ratio", num(r.ratio)}, {"constant", num(r.constant)},
                      {"s0", num(r.s0)}, {"s0_vanishes", r.s0_vanishes}, {"pass", r.pass}});
      csv += Run::quote(f.id) + "," + format_double(q) + "," + format_double(r.lhs) + "," +
             format_double(r.rhs) + "," + format_double(r.ratio) + "," + format_double(r.constant) +
             "," + format_double(r.s0) + "," + (r.pass ? "1" : "0") + "\n";
    }
    run.check("lemma12", "q=" + format_double(q),
              "max ratio <= 1 + 1e-6 over " + std::to_string(corpus.size()) + " functions", worst,
              1.0 + 1e-6, 0.0, failures == 0);
    if (vanishing)
      run.notes.push_back("q=" + format_double(q) + ": " + std::to_string(vanishing) +
                          " functions with s(0) = 0 (hypothesis vacuous, rhs = C_q)");
  }
  run.report.json["corpus_size"] = corpus.size();
  run.report.json["rows"] = std::move(rows);
  run.report.csv = csv;
}

void run_kfunc(Run& run) {
  const auto& c = run.cfg;
  std::string csv = "function,t,lower,upper,argmin_lambda\n";
  Json tables = Json::array();
  for (const auto& f : c.corpus) {
    const KReport k = k_report(f.f, c.t_grid, c.lambda_grid);
    Json rows = Json::array();
    for (std::size_t i = 0; i < k.t.size(); ++i) {
      rows.push_back({{"t", k.t[i]}, {"lower", num(k.lower[i])}, {"upper", num(k.upper[i])},
                      {"argmin_lambda", num(k.argmin_lambda[i])}});
      csv += Run::quote(f.id) + "," + format_double(k.t[i]) + "," + format_double(k.lower[i]) + "," +
             format_double(k.upper[i]) + "," + format_double(k.argmin_lambda[i]) + "\n";
    }
    run.check("kfunc", f.id, "K_L(t) <= K_H(t) on the grid", 0.0, 0.0, 0.0, k.sandwich);
    run.check("kfunc", f.id, "K_H nondecreasing", 0.0, 0.0, 0.0, k.upper_monotone);
    run.check("kfunc", f.id, "K_L nondecreasing and concave", 0.0, 0.0, 0.0,
              k.lower_monotone && k.lower_concave);
    Json norms = Json::array();
    for (double th : c.theta_grid) {
      for (double q : c.q_grid) {
        const InterpNorm up = real_interp_norm(f.f, th, q, c.lambda_grid);
        const InterpNorm lo = real_interp_norm_lower(f.f.boundary(), th, q);
        const double p = 1.0 / (1.0 - th);
        const double lorentz = lorentz_norm(f.f.boundary(), p, q);
        const std::string subject = f.id + " theta=" + format_double(th) + " q=" + format_double(q);
        run.check("interp_norm", subject, "lower <= upper, both converged", lo.value, up.value, 0.0,
                  up.converged && lo.converged && lo.value <= up.value * (1.0 + 1e-12));
        norms.push_back({{"theta", th}, {"q", q}, {"upper", num(up.value)}, {"lower", num(lo.value)},
                         {"upper_tail_fraction", num(up.tail_fraction)},
                         {"lorentz_p", p}, {"lorentz", num(lorentz)},
                         {"upper_over_lorentz", num(up.value / lorentz)}});
      }
    }
    tables.push_back({{"function", f.id}, {"rows", std::move(rows)}, {"interp_norms", std::move(norms)}});
  }
  run.report.json["tables"] = std::move(tables);
  run.report.csv = csv;
}

// ---------------------------------------------------------------------------

Json stopping_section(Run& run, const std::string& id, const Martingale& F, const PathEnsemble& e,
                      double M, int offset) {
  const auto dec = stopping_decompose(F, e, M);
  run.check("decomposition", id, "|d_i| <= 2 M^(i+1) (1 + eta), support, telescoping",
            dec.max_jump_ratio, 1.0, 0.0, dec.exact_pass());
  run.check("decomposition", id, dec.parseval.name, dec.parseval.lhs, dec.parseval.rhs,
            dec.parseval.stderr_, dec.parseval.pass);
  run.check("decomposition", id, "orthogonality of d_i (sigmas, budgeted)",
            dec.worst_orthogonality_sigmas, 3.0, 0.0, dec.orthogonality_pass);
  const auto fam = truncation_family(dec, offset);
  run.check("family", id, "chain E|1-w|^2 <= 2(1-Ew) <= 2E(1_E ln) <= 2M^-(i+off) E(1_E A) per level",
            0.0, 0.0, 0.0, fam.chain_pass());
  const auto basic = basic_estimates_report(dec, fam);
  run.check("lemmas", id, "sum_i 1_{A>M^i} M^i <= 2 M A on every path",
            basic.pointwise.worst_ratio, 1.0, 0.0, basic.pointwise.pass);
  run.check("lemmas", id, "sum_i M^i E(1_{A>M^(i+off)} A) <= M^(2-off) E A^2", basic.integral.lhs,
            basic.integral.rhs, basic.integral.stderr_, basic.integral.pass);
  run.check("lemmas", id, "square-function bound <= M^(2-off) E A^2", basic.square.bound,
            basic.square.rhs, 0.0, basic.square.pass);
  return {{"decomposition", decomposition_json(dec)}, {"family", family_json(fam)},
          {"lemmas", basic_estimates_json(basic)}};
}

void run_simulate(Run& run) {
  const auto& c = run.cfg;
  auto ensemble = std::make_shared<PathEnsemble>(PathEnsemble::sample(c.sim));
  const PathEnsemble& e = *ensemble;
  const std::size_t P = e.size();

  // calibration
  std::vector<double> tau(P), angle(P);
  for (std::size_t p = 0; p < P; ++p) {
    tau[p] = e.exit_time(p);
    double a = std::arg(e.exit_point(p)) / (2.0 * std::numbers::pi);
    angle[p] = a < 0.0 ? a + 1.0 : a;
  }
  const Estimate et = estimate(tau);
  const double budget = 3.0 * et.stderr_ + std::sqrt(c.sim.dt);
  run.check("calibration", "exit", "|E tau - 1/2| <= 3 se + sqrt(dt)", std::abs(et.mean - 0.5), budget,
            et.stderr_, std::abs(et.mean - 0.5) <= budget);
  const KsResult ks = ks_uniform(angle);
  run.check("calibration", "exit", "KS uniformity of exit angles, p-value >= 0.01", ks.p_value, 0.01,
            0.0, ks.p_value >= 0.01);
  Json cal = {{"mean_exit_time", num(et.mean)}, {"exit_time_stderr", num(et.stderr_)},
              {"ks_statistic", num(ks.statistic)}, {"ks_p_value", num(ks.p_value)},
              {"unexited", e.unexited()}, {"max_exit_index", e.max_exit_index()}};
  run.report.json["calibration"] = std::move(cal);

  // embedded corpus
  Json functions = Json::array();
  for (const auto& f : c.corpus) {
    const auto F = embed(f.f);
    const auto A = maximal_function(F, e);
    std::vector<double> a2(P), f4(P);
    for (std::size_t p = 0; p < P; ++p) {
      a2[p] = A[p] * A[p];
      f4[p] = 4.0 * std::norm(F.terminal(p, e));
    }
    const auto doob = paired_check("E A^2 <= 4 E|F|^2", a2, f4);
    run.check("doob", f.id, doob);
    Json fj = stopping_section(run, f.id, F, e, c.sim.M, c.sim.offset);
    fj["function"] = f.id;
    fj["doob_ratio"] = num(std::sqrt(estimate(a2).mean / (estimate(f4).mean / 4.0)));
    fj["doob"] = check_json(doob);
    functions.push_back(std::move(fj));
  }
  run.report.json["functions"] = std::move(functions);

  // exponential forms
  Json exps = Json::array();
  for (const auto& u : c.real_corpus) {
    const auto th = verify_th32(u.u, e);
    run.check("exp_identity", u.id, "E exp(R + iHR) = exp(E R)", th.difference, 3.0 * th.stderr_,
              th.stderr_, th.pass);
    Json sweep = Json::array();
    for (double l : c.lambda_grid) {
      const auto t = holomorphic_truncate(u.u, l, e);
      const std::string subject = u.id + " lambda=" + format_double(l);
      run.check("truncation", subject, t.distance);
      run.check("truncation", subject, t.link1);
      run.check("truncation", subject, t.link2);
      run.check("truncation", subject, t.link3);
      run.check("truncation", subject, "|G| <= min(lambda, |F|) on the grid", 0.0, 0.0, 0.0,
                t.g_bounded && t.g_dominated);
      sweep.push_back({{"lambda", l}, {"distance", check_json(t.distance)},
                       {"link1", check_json(t.link1)}, {"link2", check_json(t.link2)},
                       {"link3", check_json(t.link3)}, {"e_one_minus_s_sq", num(t.e_one_minus_s_sq)},
                       {"deficit", num(t.deficit)}, {"mean_S", complex_json(t.mean_S)},
                       {"exp_identity_gap", num(t.exp_identity_gap)}, {"pass", t.pass}});
    }
    exps.push_back({{"function", u.id}, {"mean_F", complex_json(th.mean_F)},
                    {"exp_mean_R", num(th.exp_mean_R)}, {"difference", num(th.difference)},
                    {"stderr", num(th.stderr_)}, {"max_modulus_error", num(th.max_modulus_error)},
                    {"truncation", std::move(sweep)}});
  }
  run.report.json["exp_forms"] = std::move(exps);

  if (c.checkpoint != "none") {
    run.report.checkpoint_source = ensemble;
    run.report.checkpoint_format = c.checkpoint;
  }
}

void run_interpolate(Run& run) {
  const auto& c = run.cfg;
  const PathEnsemble e = PathEnsemble::sample(c.sim);
  const bool bound = c.mode != "phase";
  const bool phase = c.mode != "bound" || c.jones_steps > 0;
  std::optional<PathEnsemble> pe;
  if (phase) {
    SimConfig ps = c.sim;
    ps.paths = c.phase_paths;
    pe = PathEnsemble::sample(ps);
  }
  PhaseOptions popts;
  popts.regression = c.regression;
  StripOptions sopts;
  sopts.t_grid = c.t_grid;

  auto record = [&](const std::string& id, const InterpolationCertificate& cert) {
    const char* mode = cert.mode == InterpMode::kBound ? "bound" : "phase";
    const std::string subject = id + " " + mode;
    run.check("certificate", subject, cert.theta.name, cert.theta.lhs, cert.theta.rhs,
              cert.theta.stderr_, cert.theta.pass);
    run.check("certificate", subject, cert.h1.name, cert.h1.lhs, cert.h1.rhs, cert.h1.stderr_,
              cert.h1.pass);
    run.check("certificate", subject, cert.hinf.name, cert.hinf.lhs, cert.hinf.rhs,
              cert.hinf.stderr_, cert.hinf.pass);
    Json j = certificate_json(cert);
    j["function"] = id;
    return j;
  };

  Json certs = Json::array(), jones = Json::array();
  for (const auto& f : c.corpus) {
    double scale = 1.0;
    const auto fn = normalize_l2(f.f, &scale);
    if (std::abs(scale - 1.0) > 1e-12)
      run.notes.push_back(f.id + " rescaled by " + format_double(scale) + " to unit L2 norm");
    const auto F = embed(fn);
    if (bound) {
      const auto dec = stopping_decompose(F, e, c.sim.M);
      const auto fam = truncation_family(dec, c.sim.offset);
      sopts.mode = InterpMode::kBound;
      certs.push_back(record(f.id, strip_bounds_report(dec, fam, c.sim.seed, sopts)));
    }
    if (c.mode != "bound") {
      const auto dec = stopping_decompose(F, *pe, c.sim.M);
      auto fam = truncation_family(dec, c.sim.offset);
      add_phases(fam, F, *pe, popts);
      sopts.mode = InterpMode::kPhase;
      certs.push_back(record(f.id, strip_bounds_report(dec, fam, c.sim.seed, sopts)));
    }
    if (c.jones_steps > 0) {
      const std::vector<Complex> target(fn.boundary().samples().begin(), fn.boundary().samples().end());
      const auto r = jones_iterate(wiener_one_step(*pe, c.sim.M, c.sim.offset, popts), target,
                                   c.jones_steps);
      run.check("jones", f.id, "half-error contract, 2^-m decay, norm bound and slope",
                r.residual.back(), std::ldexp(r.residual.front(), -static_cast<int>(r.residual.size() - 1)),
                0.0, r.converged());
      Json jj = jones_json(r);
      jj["function"] = f.id;
      jones.push_back(std::move(jj));
    }
  }
  run.report.json["certificates"] = std::move(certs);
  if (c.jones_steps > 0) run.report.json["jones"] = std::move(jones);
}

void run_oracle(Run& run) {
  const auto& c = run.cfg;
  const PathEnsemble e = PathEnsemble::sample(c.sim);
  const std::size_t P = e.size();
  Json hilbert = Json::array();
  for (const auto& u : c.real_corpus) {
    const auto R = harmonic_extension(u.u);
    const auto mc = stochastic_hilbert_mc(R, e, c.regression);
    const auto closed = terminal_values(stochastic_hilbert_closed(u.u), e);
    const auto r = terminal_values(R, e);
    std::vector<double> hc(P), minus(P), rr(P);
    for (std::size_t p = 0; p < P; ++p) {
      hc[p] = closed[p].real();
      rr[p] = r[p].real();
    }
    const double mean_r = estimate(rr).mean;
    for (std::size_t p = 0; p < P; ++p) minus[p] = -(rr[p] - mean_r);
    const double err = relative_l2_error(mc.value, hc);
    run.check("hilbert", u.id, "||H_mc R - H R||_2 / ||H R||_2 <= 0.1", err, 0.1, 0.0, err <= 0.1);
    const auto twice = stochastic_hilbert_mc(mc.process, e, c.regression);
    const double err2 = relative_l2_error(twice.value, minus);
    run.check("hilbert", u.id, "||H_mc H_mc R + (R - ER)||_2 / ||R - ER||_2 <= 0.2", err2, 0.2, 0.0,
              err2 <= 0.2);
    hilbert.push_back({{"function", u.id}, {"relative_error", num(err)},
                       {"square_relative_error", num(err2)}});
  }
  Json round = Json::array();
  for (const auto& f : c.corpus) {
    const auto fn = normalize_l2(f.f);
    const auto back = project(terminal_values(embed(fn), e), e, c.n);
    const double err = norm_p(back - fn.boundary(), 2.0);
    run.check("embedding", f.id, "||N M f - f||_2 <= 0.05 (unit ||f||_2)", err, 0.05, 0.0, err <= 0.05);
    round.push_back({{"function", f.id}, {"error", num(err)}, {"N", c.n}});
  }
  run.report.json["hilbert"] = std::move(hilbert);
  run.report.json["round_trip"] = std::move(round);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  Run run(config);
  const std::string& c = config.command;
  if (c == "decompose") run_decompose(run);
  else if (c == "lemma12") run_lemma12(run);
  else if (c == "kfunc") run_kfunc(run);
  else if (c == "simulate") run_simulate(run);
  else if (c == "interpolate") run_interpolate(run);
  else if (c == "oracle") run_oracle(run);
  else bad("unknown command \"" + c + "\"");
  return run.finish();
}

std::vector<std::string> write_report(const ExperimentReport& r, const std::string& dir,
                                      const std::string& format) {
  namespace fs = std::filesystem;
  require(format == "json" || format == "csv", ErrorCode::kInvalidArgument,
          "format must be json or csv");
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec && fs::is_directory(dir), ErrorCode::kIo, "cannot create output directory " + dir);
  std::vector<std::string> written;
  const fs::path base(dir);
  const std::string main = (base / (r.command + "." + format)).string();
  write_file_atomic(main, format == "json" ? r.json.dump(2) + "\n" : r.csv);
  written.push_back(main);
  const std::string summary = (base / (r.command + "_summary.txt")).string();
  write_file_atomic(summary, r.summary);
  written.push_back(summary);
  if (r.checkpoint_source) {
    if (r.checkpoint_format == "binary") {
      const std::string path = (base / "increments.bin").string();
      r.checkpoint_source->write_increments(path);
      written.push_back(path);
    } else {
      const std::string path = (base / "increments.csv").string();
      r.checkpoint_source->write_increments_csv(path);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace hardy
