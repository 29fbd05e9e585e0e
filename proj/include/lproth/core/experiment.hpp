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

// Seeded experiment suites, their configuration and the JSON / CSV reports.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lproth {

enum class Suite { kernels, gowers, forms, oscillatory, counterexamples, search, verify_all };

const char* suite_name(Suite s);
std::optional<Suite> suite_from_name(const std::string& name);
const std::vector<Suite>& all_suites();
const char* suite_description(Suite s);

// Thrown for bad user input (exit code 1); `key` names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::optional<Suite> suite;
  double p = 1.5;
  int d = 2;
  double N = 64.0;
  double epsilon = 0.05;
  std::uint64_t seed = 7;
  std::string out_dir = "lproth-out";
  std::string format = "json";
  // Budgets.
  std::uint64_t search_budget = 10'000'000;    // forbidden-gap probe proposals
  std::uint64_t spectrum_samples = 100'000;    // verified progressions per spectrum
  int decay_samples = 10;                      // t samples of the decay fit
  int theorem_seeds = 25;

  // Throws ConfigError unless every field lies in the range its suite accepts.
  void validate() const;
};

// Keys accepted in files and as flags (without the leading "--").
const std::vector<std::string>& config_keys();

// Applies `key = value`; throws ConfigError on unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
// Flat "key = value" lines with '#' comments.
void load_config_file(ExperimentConfig& cfg, const std::string& path);
// Defaults, then the file (if any), then the flags; validated.
ExperimentConfig parse_config(const std::vector<std::pair<std::string, std::string>>& flags,
                              const std::optional<std::string>& file);

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string anchor;  // the claim being checked, in words
  std::vector<std::pair<std::string, double>> values;
  std::string bound;
  bool pass = false;
  // Signed slack in the units of the check: >= 0 on pass.
  double margin = 0.0;
  double seconds = 0.0;
};

struct Sidecar {
  std::string file;
  std::string content;
};

struct Report {
  ExperimentConfig config;
  std::vector<CheckRecord> records;
  std::vector<Sidecar> sidecars;
  std::string timestamp;
  double total_seconds = 0.0;

  std::size_t failed() const;
  // Anchorless or unnamed records.
  std::vector<std::string> lint() const;
  std::string to_json() const;
  std::string to_csv() const;
};

inline constexpr int kReportFormat = 1;

Report run_suite(const ExperimentConfig& cfg);

// Writes report.json or report.csv plus every sidecar into cfg.out_dir, each
// through a temporary file and a rename. Returns the paths written.
std::vector<std::string> write_report(const Report& report);

std::string suite_listing();
std::string report_schema();

}  // namespace lproth
