// Copyright 2026 The lproth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lproth/lproth.h"

#include <exception>
#include <new>
#include <string>

#include "lproth/core/error.hpp"
#include "lproth/core/experiment.hpp"
#include "lproth/core/gowers.hpp"
#include "lproth/core/kernels.hpp"
#include "lproth/core/lp_geometry.hpp"
#include "lproth/core/oscillatory.hpp"

struct lproth_config {
  lproth::ExperimentConfig cfg;
};

struct lproth_report {
  lproth::Report rep;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_key;

lproth_status set_error(lproth_status s, const std::string& what, const std::string& key = "") {
  g_error = what;
  g_error_key = key;
  return s;
}

// Maps exceptions from the core onto status codes.
template <class F>
lproth_status guarded(F&& f) {
  g_error.clear();
  g_error_key.clear();
  try {
    return f();
  } catch (const lproth::ConfigError& e) {
    return set_error(LPROTH_E_USAGE, e.what(), e.key());
  } catch (const lproth::Error& e) {
    if (e.code() == lproth::ErrorCode::invalid_argument)
      return set_error(LPROTH_E_INVALID_ARGUMENT, e.what());
    return set_error(LPROTH_E_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LPROTH_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LPROTH_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(LPROTH_E_INTERNAL, "unknown failure");
  }
}

}  // namespace

extern "C" {

const char* lproth_version(void) { return "1.0.0"; }
const char* lproth_last_error(void) { return g_error.c_str(); }
const char* lproth_last_error_key(void) { return g_error_key.c_str(); }

lproth_status lproth_config_new(lproth_config** out) {
  if (!out) return set_error(LPROTH_E_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = new lproth_config();
    return LPROTH_OK;
  });
}

void lproth_config_free(lproth_config* cfg) { delete cfg; }

lproth_status lproth_config_set(lproth_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return set_error(LPROTH_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lproth::apply_setting(cfg->cfg, key, value);
    return LPROTH_OK;
  });
}

lproth_status lproth_config_load(lproth_config* cfg, const char* path) {
  if (!cfg || !path) return set_error(LPROTH_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lproth::load_config_file(cfg->cfg, path);
    return LPROTH_OK;
  });
}

lproth_status lproth_config_validate(const lproth_config* cfg) {
  if (!cfg) return set_error(LPROTH_E_INVALID_ARGUMENT, "null config");
  return guarded([&] {
    cfg->cfg.validate();
    return LPROTH_OK;
  });
}

size_t lproth_config_key_count(void) { return lproth::config_keys().size(); }

const char* lproth_config_key(size_t index) {
  const auto& k = lproth::config_keys();
  return index < k.size() ? k[index].c_str() : nullptr;
}

lproth_status lproth_run(const lproth_config* cfg, lproth_report** out) {
  if (!cfg || !out) return set_error(LPROTH_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    cfg->cfg.validate();
    auto* r = new lproth_report();
    try {
      r->rep = lproth::run_suite(cfg->cfg);
      r->json = r->rep.to_json();
      r->csv = r->rep.to_csv();
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
    if (!r->rep.lint().empty())
      return set_error(LPROTH_E_INTERNAL, "report has records without anchors");
    return r->rep.failed() == 0 ? LPROTH_OK : LPROTH_E_CHECKS_FAILED;
  });
}

void lproth_report_free(lproth_report* rep) { delete rep; }

size_t lproth_report_record_count(const lproth_report* rep) {
  return rep ? rep->rep.records.size() : 0;
}

size_t lproth_report_failed_count(const lproth_report* rep) { return rep ? rep->rep.failed() : 0; }

lproth_status lproth_report_record(const lproth_report* rep, size_t index, const char** suite,
                                   const char** name, const char** anchor, int* pass) {
  if (!rep || index >= rep->rep.records.size())
    return set_error(LPROTH_E_INVALID_ARGUMENT, "record index out of range");
  const auto& r = rep->rep.records[index];
  if (suite) *suite = r.suite.c_str();
  if (name) *name = r.name.c_str();
  if (anchor) *anchor = r.anchor.c_str();
  if (pass) *pass = r.pass ? 1 : 0;
  return LPROTH_OK;
}

const char* lproth_report_json(const lproth_report* rep) { return rep ? rep->json.c_str() : nullptr; }
const char* lproth_report_csv(const lproth_report* rep) { return rep ? rep->csv.c_str() : nullptr; }

lproth_status lproth_report_write(const lproth_report* rep) {
  if (!rep) return set_error(LPROTH_E_INVALID_ARGUMENT, "null report");
  return guarded([&] {
    lproth::write_report(rep->rep);
    return LPROTH_OK;
  });
}

const char* lproth_suite_listing(void) {
  static const std::string s = lproth::suite_listing();
  return s.c_str();
}

const char* lproth_report_schema(void) {
  static const std::string s = lproth::report_schema();
  return s.c_str();
}

lproth_status lproth_lp_norm(const double* y, size_t d, double p, double* out) {
  if (!y || !out || d == 0) return set_error(LPROTH_E_INVALID_ARGUMENT, "bad arguments");
  return guarded([&] {
    lproth::require_finite(std::span<const double>(y, d), "lproth_lp_norm");
    *out = lproth::lp_norm(std::span<const double>(y, d), lproth::LpExponent(p));
    return LPROTH_OK;
  });
}

lproth_status lproth_kernel_mass(double p, int d, double epsilon, double* out) {
  if (!out) return set_error(LPROTH_E_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    static const lproth::MollifierPair m = lproth::MollifierPair::build();
    *out = lproth::kernel_total_mass(lproth::KernelParams{lproth::LpExponent(p), d, 1.0, epsilon}, m)
               .value;
    return LPROTH_OK;
  });
}

lproth_status lproth_oscillatory_integral(double p, double t, double* out) {
  if (!out) return set_error(LPROTH_E_INVALID_ARGUMENT, "null output pointer");
  return guarded([&] {
    *out = lproth::i_of_t(lproth::LpExponent(p), t);
    return LPROTH_OK;
  });
}

lproth_status lproth_u3_norm(const double* re_im, int M, int d, double* out) {
  if (!re_im || !out) return set_error(LPROTH_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lproth::require(M >= 1 && M <= 4096 && d >= 1 && d <= 2, "lproth_u3_norm: bad grid");
    auto F = lproth::CyclicGridFunction::zeros(M, d);
    for (std::size_t i = 0; i < F.size(); ++i) F.values[i] = {re_im[2 * i], re_im[2 * i + 1]};
    *out = lproth::u3_norm(F);
    return LPROTH_OK;
  });
}

}  // extern "C"
