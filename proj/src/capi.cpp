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

#include "hardylab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "experiments.hpp"
#include "hardylab/error.hpp"
#include "hardylab/io.hpp"

struct hl_function {
  hardy::BoundaryFunction f;
};

struct hl_ensemble {
  hardy::PathEnsemble e;
};

struct hl_report {
  hardy::ExperimentReport r;
  std::string format;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

hl_status fail(hl_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

// Runs body, translating exceptions into status codes.
template <class Body>
hl_status guard(Body&& body) {
  g_last_error.clear();
  try {
    body();
    return HL_OK;
  } catch (const hardy::Error& e) {
    return fail(static_cast<hl_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HL_E_INTERNAL, e.what());
  } catch (...) {
    return fail(HL_E_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<std::uint64_t> seed_of(const uint64_t* seed) {
  return seed ? std::optional<std::uint64_t>(*seed) : std::nullopt;
}

template <class... T>
bool any_null(const T*... p) {
  return ((p == nullptr) || ...);
}

#define HL_REQUIRE_NONNULL(...) \
  if (any_null(__VA_ARGS__)) return fail(HL_E_NULL, "null argument")

}  // namespace

extern "C" {

const char* hl_version(void) { return "1.0.0"; }

const char* hl_status_string(hl_status s) {
  switch (s) {
    case HL_OK: return "ok";
    case HL_E_INVALID_ARGUMENT: return "invalid argument";
    case HL_E_SIZE_MISMATCH: return "size mismatch";
    case HL_E_NOT_ANALYTIC: return "not analytic";
    case HL_E_NOT_REAL: return "not real";
    case HL_E_DOMAIN: return "domain error";
    case HL_E_DEGENERATE: return "degenerate input";
    case HL_E_REGRESSION: return "regression failure";
    case HL_E_CONTRACT: return "contract violation";
    case HL_E_IO: return "i/o error";
    case HL_E_PARSE: return "parse error";
    case HL_E_NULL: return "null argument";
    case HL_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hl_last_error(void) { return g_last_error.c_str(); }

void hl_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------

hl_status hl_function_create(size_t n, const double* re, const double* im, hl_function** out) {
  HL_REQUIRE_NONNULL(re, out);
  return guard([&] {
    std::vector<hardy::Complex> v(n);
    for (size_t k = 0; k < n; ++k) v[k] = {re[k], im ? im[k] : 0.0};
    *out = new hl_function{hardy::BoundaryFunction(std::move(v))};
  });
}

hl_status hl_function_from_json(const char* json, hl_function** out) {
  HL_REQUIRE_NONNULL(json, out);
  return guard([&] { *out = new hl_function{hardy::boundary_from_json(json)}; });
}

hl_status hl_function_to_json(const hl_function* f, char** out) {
  HL_REQUIRE_NONNULL(f, out);
  return guard([&] { *out = dup(hardy::to_json(f->f)); });
}

hl_status hl_function_to_csv(const hl_function* f, char** out) {
  HL_REQUIRE_NONNULL(f, out);
  return guard([&] { *out = dup(hardy::to_csv(f->f)); });
}

void hl_function_destroy(hl_function* f) { delete f; }

size_t hl_function_size(const hl_function* f) { return f ? f->f.size() : 0; }

hl_status hl_function_samples(const hl_function* f, double* re, double* im) {
  HL_REQUIRE_NONNULL(f, re, im);
  for (size_t k = 0; k < f->f.size(); ++k) {
    re[k] = f->f[k].real();
    im[k] = f->f[k].imag();
  }
  return HL_OK;
}

hl_status hl_function_conjugate(const hl_function* f, hl_function** out) {
  HL_REQUIRE_NONNULL(f, out);
  return guard([&] { *out = new hl_function{hardy::conjugate(f->f)}; });
}

hl_status hl_function_riesz_project(const hl_function* f, hl_function** out) {
  HL_REQUIRE_NONNULL(f, out);
  return guard([&] { *out = new hl_function{hardy::riesz_project(f->f).boundary()}; });
}

hl_status hl_function_norm(const hl_function* f, double p, double* out) {
  HL_REQUIRE_NONNULL(f, out);
  return guard([&] { *out = hardy::norm_p(f->f, p); });
}

// ---------------------------------------------------------------------------

hl_status hl_ensemble_sample(const char* config, hl_ensemble** out) {
  HL_REQUIRE_NONNULL(config, out);
  return guard([&] {
    *out = new hl_ensemble{hardy::PathEnsemble::sample(hardy::sim_config_from_json(config))};
  });
}

void hl_ensemble_destroy(hl_ensemble* e) { delete e; }

size_t hl_ensemble_size(const hl_ensemble* e) { return e ? e->e.size() : 0; }

hl_status hl_ensemble_exit(const hl_ensemble* e, size_t path, double* re, double* im, double* time) {
  HL_REQUIRE_NONNULL(e);
  if (path >= e->e.size()) return fail(HL_E_INVALID_ARGUMENT, "path index out of range");
  const hardy::Complex z = e->e.exit_point(path);
  if (re) *re = z.real();
  if (im) *im = z.imag();
  if (time) *time = e->e.exit_time(path);
  return HL_OK;
}

hl_status hl_ensemble_write_checkpoint(const hl_ensemble* e, const char* path, const char* format) {
  HL_REQUIRE_NONNULL(e, path, format);
  const std::string fmt = format;
  if (fmt != "binary" && fmt != "csv") return fail(HL_E_INVALID_ARGUMENT, "format must be binary or csv");
  return guard([&] {
    if (fmt == "binary") e->e.write_increments(path);
    else e->e.write_increments_csv(path);
  });
}

hl_status hl_ensemble_compare_checkpoint(const hl_ensemble* e, const char* path, double* out) {
  HL_REQUIRE_NONNULL(e, path, out);
  return guard([&] { *out = hardy::compare_increments(e->e, path); });
}

// ---------------------------------------------------------------------------

hl_status hl_config_validate(const char* command, const char* config, const uint64_t* seed) {
  HL_REQUIRE_NONNULL(config);
  return guard([&] { hardy::parse_experiment_config(config, command ? command : "", seed_of(seed)); });
}

hl_status hl_run(const char* command, const char* config, const uint64_t* seed, hl_report** out) {
  HL_REQUIRE_NONNULL(config, out);
  return guard([&] {
    const auto cfg = hardy::parse_experiment_config(config, command ? command : "", seed_of(seed));
    auto* r = new hl_report{hardy::run_experiment(cfg), cfg.format, {}};
    r->json = r->r.json.dump(2) + "\n";
    *out = r;
  });
}

void hl_report_destroy(hl_report* r) { delete r; }

int hl_report_passed(const hl_report* r) { return r && r->r.pass ? 1 : 0; }

const char* hl_report_command(const hl_report* r) { return r ? r->r.command.c_str() : ""; }

const char* hl_report_format(const hl_report* r) { return r ? r->format.c_str() : ""; }

const char* hl_report_json(const hl_report* r) { return r ? r->json.c_str() : ""; }

const char* hl_report_csv(const hl_report* r) { return r ? r->r.csv.c_str() : ""; }

const char* hl_report_summary(const hl_report* r) { return r ? r->r.summary.c_str() : ""; }

hl_status hl_report_write(const hl_report* r, const char* out_dir, const char* format, char** written) {
  HL_REQUIRE_NONNULL(r, out_dir);
  return guard([&] {
    const auto paths = hardy::write_report(r->r, out_dir, format ? format : r->format);
    if (written) {
      std::string joined;
      for (const auto& p : paths) joined += p + "\n";
      *written = dup(joined);
    }
  });
}

}  // extern "C"
