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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "lproth/core/experiment.hpp"

using namespace lproth;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string key_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

ExperimentConfig with(std::vector<std::pair<std::string, std::string>> flags) {
  return parse_config(flags, std::nullopt);
}

std::filesystem::path temp_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("lproth_test_" + name);
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("suite names round-trip") {
  for (Suite s : all_suites()) {
    auto back = suite_from_name(suite_name(s));
    REQUIRE(back);
    CHECK(*back == s);
    CHECK(std::string(suite_description(s)).size() > 0);
  }
  CHECK(suite_from_name("verify-all") == Suite::verify_all);
  CHECK_FALSE(suite_from_name("nope"));
  CHECK(suite_listing().find("oscillatory") != std::string::npos);
}

TEST_CASE("defaults, flags and validation") {
  auto c = with({{"suite", "forms"}});
  CHECK(c.p == 1.5);
  CHECK(c.d == 2);
  CHECK(c.seed == 7);
  c = with({{"suite", "kernels"}, {"p", "3"}, {"d", "1"}, {"seed", "18446744073709551615"}});
  CHECK(c.p == 3.0);
  CHECK(c.seed == 18446744073709551615ULL);

  CHECK(key_of([] { with({}); }) == "suite");
  CHECK(key_of([] { with({{"suite", "bogus"}}); }) == "suite");
  CHECK(key_of([] { with({{"suite", "forms"}, {"colour", "red"}}); }) == "colour");
  CHECK(key_of([] { with({{"suite", "forms"}, {"p", "0.5"}}); }) == "p");
  CHECK(key_of([] { with({{"suite", "forms"}, {"p", "1.5x"}}); }) == "p");
  CHECK(key_of([] { with({{"suite", "search"}, {"p", "2"}}); }) == "p");
  CHECK(key_of([] { with({{"suite", "verify-all"}, {"p", "1"}}); }) == "p");
  CHECK(key_of([] { with({{"suite", "gowers"}, {"d", "3"}}); }) == "d");
  CHECK(key_of([] { with({{"suite", "oscillatory"}, {"p", "6"}}); }) == "p");
  CHECK(key_of([] { with({{"suite", "verify-all"}, {"p", "5.5"}}); }) == "p");
  CHECK_NOTHROW(with({{"suite", "oscillatory"}, {"p", "5"}}));
  CHECK_NOTHROW(with({{"suite", "kernels"}, {"p", "8"}}));
  CHECK(key_of([] { with({{"suite", "forms"}, {"N", "64.5"}}); }) == "N");
  CHECK(key_of([] { with({{"suite", "forms"}, {"N", "16"}}); }) == "N");
  CHECK(key_of([] { with({{"suite", "forms"}, {"epsilon", "2"}}); }) == "epsilon");
  CHECK(key_of([] { with({{"suite", "forms"}, {"seed", "-3"}}); }) == "seed");
  CHECK(key_of([] { with({{"suite", "forms"}, {"format", "xml"}}); }) == "format");
  // p = 2 is fine where it is a demonstration rather than a theorem input.
  CHECK_NOTHROW(with({{"suite", "counterexamples"}, {"p", "2"}}));
  CHECK_NOTHROW(with({{"suite", "search"}, {"d", "3"}}));
}

TEST_CASE("config files: comments, precedence of flags, errors") {
  auto dir = temp_dir("cfg");
  std::filesystem::create_directories(dir);
  auto path = (dir / "run.cfg").string();
  {
    std::ofstream f(path);
    f << "# a comment\n suite = gowers \np = 3   # trailing\n\nseed=11\n";
  }
  auto c = parse_config({}, path);
  CHECK(*c.suite == Suite::gowers);
  CHECK(c.p == 3.0);
  CHECK(c.seed == 11);
  c = parse_config({{"seed", "12"}}, path);
  CHECK(c.seed == 12);
  {
    std::ofstream f(path);
    f << "suite gowers\n";
  }
  CHECK(key_of([&] { parse_config({}, path); }) == "config");
  CHECK(key_of([&] { parse_config({}, (dir / "missing.cfg").string()); }) == "config");
  for (const auto& k : config_keys()) CHECK_FALSE(k.empty());
}

TEST_CASE("reports are deterministic apart from the timing block") {
  auto c = with({{"suite", "gowers"}, {"seed", "3"}});
  Report a = run_suite(c), b = run_suite(c);
  REQUIRE(a.records.size() == b.records.size());
  CHECK(a.lint().empty());
  auto ja = ordered_json::parse(a.to_json()), jb = ordered_json::parse(b.to_json());
  CHECK(ja.contains("timing"));
  ja.erase("timing");
  jb.erase("timing");
  CHECK(ja.dump() == jb.dump());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(ja["format"] == kReportFormat);
  CHECK(ja["summary"]["total"] == a.records.size());
  CHECK(ja["summary"]["failed"] == a.failed());
  for (const auto& r : ja["records"]) {
    CHECK(r.contains("anchor"));
    CHECK(r["suite"] == "gowers");
  }
}

TEST_CASE("report values and margins agree with pass flags") {
  auto c = with({{"suite", "kernels"}, {"p", "3"}, {"d", "1"}});
  Report r = run_suite(c);
  for (const auto& rec : r.records) {
    CHECK(rec.pass == (rec.margin >= 0.0));
    CHECK_FALSE(rec.bound.empty());
  }
  CHECK(r.failed() == 0);
}

TEST_CASE("write_report produces the report and its sidecars") {
  auto dir = temp_dir("write");
  auto c = with({{"suite", "gowers"}, {"out", dir.string()}, {"format", "csv"}});
  Report r = run_suite(c);
  auto files = write_report(r);
  CHECK(files.size() == r.sidecars.size() + 1);
  for (const auto& f : files) CHECK(std::filesystem::exists(f));
  CHECK(std::filesystem::exists(dir / "report.csv"));
  std::ifstream in(dir / "report.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "index,suite,name,anchor,pass,margin,bound,values");
  // No temporary files left behind.
  for (const auto& e : std::filesystem::directory_iterator(dir))
    CHECK(e.path().string().find(".tmp.") == std::string::npos);
}

TEST_CASE("schema names every required report field") {
  auto s = ordered_json::parse(report_schema());
  auto req = s["required"];
  for (const char* k : {"format", "tool", "config", "records", "summary", "timing"})
    CHECK(std::find(req.begin(), req.end(), k) != req.end());
}
