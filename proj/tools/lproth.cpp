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

// Command-line driver. Talks to the library through the C interface only.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lproth/lproth.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;
constexpr int kExitInternal = 3;

int report_error(const char* what, int code) {
  std::fprintf(stderr, "lproth: %s: %s\n", what, lproth_last_error());
  return code;
}

int status_exit(lproth_status s) {
  switch (s) {
    case LPROTH_OK: return 0;
    case LPROTH_E_USAGE: return kExitUsage;
    case LPROTH_E_CHECKS_FAILED: return kExitFailed;
    default: return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lproth: numerical lab for progressions with l^p gaps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lproth_version()));

  auto* run = app.add_subcommand("run", "run an experiment suite and write its report");
  auto* list = app.add_subcommand("list", "list the available suites");
  auto* schema = app.add_subcommand("schema", "print the JSON schema of reports");
  (void)list;
  (void)schema;

  std::string config_file;
  run->add_option("--config", config_file, "flat key = value configuration file");
  // Values stay strings here; the library validates them and names bad keys.
  const char* keys[] = {"suite", "p", "d", "N", "epsilon", "seed", "out", "format"};
  const char* help[] = {"suite to run (see `lproth list`)",
                        "metric exponent p >= 1",
                        "dimension",
                        "box side",
                        "shell width epsilon",
                        "64-bit master seed",
                        "output directory",
                        "report format: json or csv"};
  std::vector<std::string> values(std::size(keys));
  for (std::size_t i = 0; i < std::size(keys); ++i)
    run->add_option(std::string("--") + keys[i], values[i], help[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (app.got_subcommand("list")) {
    std::fputs(lproth_suite_listing(), stdout);
    return 0;
  }
  if (app.got_subcommand("schema")) {
    std::fputs(lproth_report_schema(), stdout);
    return 0;
  }

  lproth_config* cfg = nullptr;
  if (lproth_config_new(&cfg) != LPROTH_OK) return report_error("config", kExitInternal);
  auto cleanup = [&](int code) {
    lproth_config_free(cfg);
    return code;
  };
  // Defaults, then the file, then the flags.
  if (!config_file.empty()) {
    lproth_status s = lproth_config_load(cfg, config_file.c_str());
    if (s != LPROTH_OK) return cleanup(report_error("config", status_exit(s)));
  }
  for (std::size_t i = 0; i < std::size(keys); ++i) {
    if (run->count(std::string("--") + keys[i]) == 0) continue;
    lproth_status s = lproth_config_set(cfg, keys[i], values[i].c_str());
    if (s != LPROTH_OK) return cleanup(report_error("usage", status_exit(s)));
  }
  if (lproth_status s = lproth_config_validate(cfg); s != LPROTH_OK)
    return cleanup(report_error("usage", s == LPROTH_E_USAGE ? kExitUsage : status_exit(s)));

  lproth_report* rep = nullptr;
  lproth_status s = lproth_run(cfg, &rep);
  if (s != LPROTH_OK && s != LPROTH_E_CHECKS_FAILED) {
    lproth_report_free(rep);
    return cleanup(report_error("run", status_exit(s)));
  }
  const std::size_t n = lproth_report_record_count(rep);
  for (std::size_t i = 0; i < n; ++i) {
    const char *suite = nullptr, *name = nullptr;
    int pass = 0;
    lproth_report_record(rep, i, &suite, &name, nullptr, &pass);
    std::printf("%s  %s/%s\n", pass ? "PASS" : "FAIL", suite, name);
  }
  if (lproth_report_write(rep) != LPROTH_OK) {
    lproth_report_free(rep);
    return cleanup(report_error("write", kExitInternal));
  }
  std::printf("%zu checks, %zu failed\n", n, lproth_report_failed_count(rep));
  lproth_report_free(rep);
  return cleanup(status_exit(s));
}
