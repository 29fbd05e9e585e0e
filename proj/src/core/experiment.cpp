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

#include "lproth/core/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "lproth/core/error.hpp"
#include "lproth/core/forms.hpp"
#include "lproth/core/gowers.hpp"
#include "lproth/core/kernels.hpp"
#include "lproth/core/lp_geometry.hpp"
#include "lproth/core/numerics.hpp"
#include "lproth/core/oscillatory.hpp"
#include "lproth/core/sets.hpp"

namespace lproth {

using json = nlohmann::ordered_json;

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> s{Suite::kernels,     Suite::gowers,
                                    Suite::forms,       Suite::oscillatory,
                                    Suite::counterexamples, Suite::search,
                                    Suite::verify_all};
  return s;
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::kernels: return "kernels";
    case Suite::gowers: return "gowers";
    case Suite::forms: return "forms";
    case Suite::oscillatory: return "oscillatory";
    case Suite::counterexamples: return "counterexamples";
    case Suite::search: return "search";
    case Suite::verify_all: return "verify-all";
  }
  return "?";
}

const char* suite_description(Suite s) {
  switch (s) {
    case Suite::kernels:
      return "mollifier pair, shell-kernel masses, cancellation, sphere measure";
    case Suite::gowers:
      return "U2/U3 identities, tensorization, kernel distances, form control";
    case Suite::forms:
      return "counting forms, decomposition, pigeonhole, energy and main term";
    case Suite::oscillatory:
      return "oscillatory decay dichotomy, phase identities, multiplier audit";
    case Suite::counterexamples:
      return "Bourgain and lattice sets, parallelogram obstruction, gap spectra";
    case Suite::search:
      return "lacunary progression search on random dense grid sets";
    case Suite::verify_all:
      return "every suite above";
  }
  return "";
}

std::optional<Suite> suite_from_name(const std::string& name) {
  for (Suite s : all_suites())
    if (name == suite_name(s)) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------- config

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> k{"suite",          "p",
                                          "d",              "N",
                                          "epsilon",        "seed",
                                          "out",            "format",
                                          "search_budget",  "spectrum_samples",
                                          "decay_samples",  "theorem_seeds"};
  return k;
}

namespace {

double parse_real(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size() || !std::isfinite(x))
    throw ConfigError(key, "invalid value for '" + key + "': " + v);
  return x;
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 20)
    throw ConfigError(key, "invalid value for '" + key + "': " + v);
  try {
    return std::stoull(v);
  } catch (...) {
    throw ConfigError(key, "invalid value for '" + key + "': " + v);
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "suite") {
    auto s = suite_from_name(value);
    if (!s) throw ConfigError(key, "unknown suite '" + value + "'");
    cfg.suite = s;
  } else if (key == "p") {
    cfg.p = parse_real(key, value);
  } else if (key == "d") {
    auto v = parse_uint(key, value);
    if (v > 16) throw ConfigError(key, "invalid value for 'd': " + value);
    cfg.d = static_cast<int>(v);
  } else if (key == "N") {
    cfg.N = parse_real(key, value);
  } else if (key == "epsilon") {
    cfg.epsilon = parse_real(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_uint(key, value);
  } else if (key == "out") {
    if (value.empty()) throw ConfigError(key, "empty output directory");
    cfg.out_dir = value;
  } else if (key == "format") {
    if (value != "json" && value != "csv")
      throw ConfigError(key, "format must be json or csv, got '" + value + "'");
    cfg.format = value;
  } else if (key == "search_budget") {
    cfg.search_budget = parse_uint(key, value);
  } else if (key == "spectrum_samples") {
    cfg.spectrum_samples = parse_uint(key, value);
  } else if (key == "decay_samples") {
    auto v = parse_uint(key, value);
    if (v > 1000) throw ConfigError(key, "invalid value for 'decay_samples': " + value);
    cfg.decay_samples = static_cast<int>(v);
  } else if (key == "theorem_seeds") {
    auto v = parse_uint(key, value);
    if (v > 10000) throw ConfigError(key, "invalid value for 'theorem_seeds': " + value);
    cfg.theorem_seeds = static_cast<int>(v);
  } else {
    throw ConfigError(key, "unknown key '" + key + "'");
  }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void ExperimentConfig::validate() const {
  if (!suite) throw ConfigError("suite", "missing --suite");
  const Suite s = *suite;
  const bool all = s == Suite::verify_all;
  if (!(p >= 1.0 && p <= 8.0)) throw ConfigError("p", "p must lie in [1, 8]");
  if ((s == Suite::search || all) && (p == 1.0 || p == 2.0))
    throw ConfigError("p", std::string("p in {1, 2} is rejected by the ") + suite_name(s) +
                               " suite (no progression theorem for these exponents)");
  // Panel counts of the oscillatory integral grow like t p 3^{p-1}; p = 5
  // already takes minutes at t = 1e4 and p = 8 takes hours.
  if ((s == Suite::oscillatory || all) && p > 5.0)
    throw ConfigError("p", std::string("p must be <= 5 for the ") + suite_name(s) +
                               " suite (oscillatory integrals become intractable)");
  int dmax = s == Suite::search ? 3 : 2;
  if (d < 1 || d > dmax)
    throw ConfigError("d", "d must lie in 1.." + std::to_string(dmax) + " for this suite");
  if (!(N >= 32.0 && N <= 512.0) || N != std::floor(N))
    throw ConfigError("N", "N must be an integer in [32, 512]");
  if (!(epsilon >= 0.005 && epsilon <= 1.0))
    throw ConfigError("epsilon", "epsilon must lie in [0.005, 1]");
  if (search_budget < 1000 || search_budget > 100'000'000)
    throw ConfigError("search_budget", "search_budget must lie in [1e3, 1e8]");
  if (spectrum_samples < 100 || spectrum_samples > 10'000'000)
    throw ConfigError("spectrum_samples", "spectrum_samples must lie in [100, 1e7]");
  if (decay_samples < 6) throw ConfigError("decay_samples", "decay_samples must be >= 6");
  if (theorem_seeds < 1) throw ConfigError("theorem_seeds", "theorem_seeds must be >= 1");
}

ExperimentConfig parse_config(const std::vector<std::pair<std::string, std::string>>& flags,
                              const std::optional<std::string>& file) {
  ExperimentConfig cfg;
  if (file) load_config_file(cfg, *file);
  for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------- report

std::size_t Report::failed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
}

std::vector<std::string> Report::lint() const {
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].anchor.empty() || records[i].name.empty())
      bad.push_back("record " + std::to_string(i) + " lacks a name or anchor");
  return bad;
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["suite"] = c.suite ? suite_name(*c.suite) : "";
  j["p"] = c.p;
  j["d"] = c.d;
  j["N"] = c.N;
  j["epsilon"] = c.epsilon;
  j["seed"] = c.seed;
  j["search_budget"] = c.search_budget;
  j["spectrum_samples"] = c.spectrum_samples;
  j["decay_samples"] = c.decay_samples;
  j["theorem_seeds"] = c.theorem_seeds;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

}  // namespace

std::string Report::to_json() const {
  json j;
  j["format"] = kReportFormat;
  j["tool"] = "lproth";
  j["config"] = config_json(config);
  json recs = json::array();
  double worst = INFINITY;
  std::string worst_name;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    json o;
    o["index"] = i;
    o["suite"] = r.suite;
    o["name"] = r.name;
    o["anchor"] = r.anchor;
    json vals;
    for (const auto& [k, v] : r.values) vals[k] = number(v);
    o["values"] = vals;
    o["bound"] = r.bound;
    o["pass"] = r.pass;
    o["margin"] = number(r.margin);
    recs.push_back(o);
    if (r.margin < worst) {
      worst = r.margin;
      worst_name = r.name;
    }
  }
  j["records"] = recs;
  json sum;
  sum["total"] = records.size();
  sum["passed"] = records.size() - failed();
  sum["failed"] = failed();
  sum["worst_margin"] = records.empty() ? json(nullptr) : number(worst);
  sum["worst_record"] = worst_name;
  json files = json::array();
  for (const auto& s : sidecars) files.push_back(s.file);
  sum["sidecars"] = files;
  j["summary"] = sum;
  // Everything that varies between identical runs lives here.
  json t;
  t["timestamp"] = timestamp;
  t["total_seconds"] = total_seconds;
  json per = json::array();
  for (const auto& r : records) per.push_back(r.seconds);
  t["record_seconds"] = per;
  j["timing"] = t;
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream o;
  o << "index,suite,name,anchor,pass,margin,bound,values\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::string vals;
    for (const auto& [k, v] : r.values) {
      if (!vals.empty()) vals += ' ';
      vals += k + "=" + sci(v);
    }
    o << i << ',' << csv_escape(r.suite) << ',' << csv_escape(r.name) << ','
      << csv_escape(r.anchor) << ',' << (r.pass ? "PASS" : "FAIL") << ',' << sci(r.margin) << ','
      << csv_escape(r.bound) << ',' << csv_escape(vals) << '\n';
  }
  return o.str();
}

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::io, "cannot rename into " + path.string());
  }
}

}  // namespace

std::vector<std::string> write_report(const Report& report) {
  namespace fs = std::filesystem;
  fs::path dir(report.config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(ErrorCode::io, "cannot create " + dir.string());
  std::vector<std::string> out;
  for (const auto& s : report.sidecars) {
    atomic_write(dir / s.file, s.content);
    out.push_back((dir / s.file).string());
  }
  fs::path main = dir / (report.config.format == "csv" ? "report.csv" : "report.json");
  atomic_write(main, report.config.format == "csv" ? report.to_csv() : report.to_json());
  out.push_back(main.string());
  return out;
}

// ---------------------------------------------------------------- suites

namespace {

using Clock = std::chrono::steady_clock;
using Values = std::vector<std::pair<std::string, double>>;

struct Outcome {
  Values values;
  std::string bound;
  bool pass = false;
  double margin = 0.0;
};

Outcome at_most(double value, double bound, Values extra = {}) {
  Outcome o;
  o.values = {{"value", value}, {"bound", bound}};
  o.values.insert(o.values.end(), extra.begin(), extra.end());
  o.bound = "value <= " + sci(bound);
  o.pass = value <= bound;
  o.margin = bound - value;
  return o;
}

Outcome at_least(double value, double bound, Values extra = {}) {
  Outcome o;
  o.values = {{"value", value}, {"bound", bound}};
  o.values.insert(o.values.end(), extra.begin(), extra.end());
  o.bound = "value >= " + sci(bound);
  o.pass = value >= bound;
  o.margin = value - bound;
  return o;
}

Outcome holds(bool ok, Values values, std::string description) {
  Outcome o;
  o.values = std::move(values);
  o.bound = std::move(description);
  o.pass = ok;
  o.margin = ok ? 0.0 : -1.0;
  return o;
}

class Runner {
 public:
  Runner(Report& rep, const char* suite) : rep_(rep), suite_(suite) {}

  void check(const std::string& name, const std::string& anchor,
             const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o = body();
    CheckRecord r;
    r.suite = suite_;
    r.name = name;
    r.anchor = anchor;
    r.values = std::move(o.values);
    r.bound = std::move(o.bound);
    r.pass = o.pass;
    r.margin = o.margin;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    rep_.records.push_back(std::move(r));
  }

  void sidecar(std::string file, std::string content) {
    rep_.sidecars.push_back({std::move(file), std::move(content)});
  }

 private:
  Report& rep_;
  const char* suite_;
};

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

CyclicGridFunction random_grid(int M, int d, Rng& r) {
  auto F = CyclicGridFunction::zeros(M, d);
  for (auto& v : F.values) v = {r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0)};
  return F;
}

// Unit-cell Bernoulli set resolved on cells of side h.
BoxFunction unit_cell_set(int d, double N, double h, double delta, Rng& r) {
  const long units = std::lround(N);
  std::vector<char> on(static_cast<std::size_t>(std::pow(units, d)));
  for (auto& o : on) o = r.bernoulli(delta) ? 1 : 0;
  return BoxFunction::indicator(d, N, h, [&](std::span<const double> x) {
    std::size_t u = 0, stride = 1;
    for (int k = 0; k < d; ++k) {
      u += static_cast<std::size_t>(std::min<long>(static_cast<long>(x[k]), units - 1)) * stride;
      stride *= static_cast<std::size_t>(units);
    }
    return on[u] != 0;
  });
}

// ---- kernels

void suite_kernels(const ExperimentConfig& c, Report& rep, const MollifierPair& m) {
  Runner run(rep, "kernels");
  const LpExponent p(c.p);
  const int d = c.d;

  run.check("mollifier_transform_consistency",
            "psi_hat from the convolution formula equals the Fourier integral of psi", [&] {
              double worst = 0.0;
              for (double u : {0.0, 0.25, 0.5, 1.0, 1.5, 1.9})
                worst = std::max(worst, std::abs(m.psi_hat(u) - m.psi_hat_by_fourier_quadrature(u)));
              return at_most(worst, 1e-8, {{"psi_hat_0", m.psi_hat(0.0)}, {"c_low", m.c_low()}});
            });

  run.check("c1_at_eps_one", "normalizer c1(1) = 1 exactly", [&] {
    double v = c1_eps(1.0, p, d, m);
    return holds(v == 1.0, {{"c1", v}}, "c1 == 1");
  });

  run.check("kernel_mass_stability",
            "int omega^eps is bounded above and below uniformly in eps", [&] {
              double lo = INFINITY, hi = 0.0;
              Values vals;
              for (double e : {0.04, 0.02, 0.01, 0.005}) {
                double v = kernel_total_mass(KernelParams{p, d, 1.0, e}, m).value;
                vals.push_back({"mass_eps_" + tag(e), v});
                lo = std::min(lo, v);
                hi = std::max(hi, v);
              }
              return at_most(hi / lo, 1.5, vals);
            });

  run.check("cancellation_integral", "int k^eps = int omega^eps - c1 int omega = 0", [&] {
    CancelledKernel k(KernelParams{p, d, 1.0, c.epsilon}, m);
    double mass = kernel_total_mass(KernelParams{p, d, 1.0, c.epsilon}, m).value;
    double v = std::abs(k.cartesian_integral());
    return at_most(v, 1e-6 * mass, {{"c1", k.c1()}, {"mass_eps", mass}});
  });

  run.check("cancelled_transform_at_zero", "khat^eps(0) = 0", [&] {
    CancelledKernel k(KernelParams{p, d, 1.0, c.epsilon}, m);
    std::vector<double> zero(static_cast<std::size_t>(d), 0.0);
    return at_most(std::abs(k.fourier(zero)), 1e-8);
  });

  run.check("sphere_mass_lambda_invariance",
            "sigma_lambda(S_lambda) does not depend on lambda", [&] {
              std::vector<double> lams{1.0, 2.0, 4.0};
              auto r = sigma_mass_invariance(p, d, lams, 64, QuadratureMode::deterministic_graph);
              return at_most(r.max_relative_deviation, 1e-4, {{"mass_lambda_1", r.masses[0]}});
            });

  run.check("circle_mass", "sigma_1(S_1) = pi for the Euclidean circle", [&] {
    auto q = sphere_quadrature(LpExponent(2.0), 2, 1.0, 64, QuadratureMode::deterministic_graph);
    return at_most(std::abs(q.total_mass() - kPi), 1e-6, {{"mass", q.total_mass()}});
  });

  run.check("unit_ball_volume_monte_carlo",
            "Monte Carlo volume of the unit l^p ball matches the Gamma-function formula", [&] {
              auto mc = unit_ball_volume_mc(p, d, 1'000'000, c.seed);
              double exact = unit_ball_volume(p, d);
              return at_most(std::abs(mc.value - exact), 5.0 * mc.std_error + 1e-12,
                             {{"exact", exact}, {"estimate", mc.value}});
            });

  std::ostringstream prof;
  prof << "r,omega_eps\n";
  const double R = kernel_support_radius(p, 1.0);
  for (int i = 0; i <= 600; ++i) {
    double r = R * i / 600.0;
    prof << sci(r) << ',' << sci(omega_eps_profile(std::pow(r, c.p), c.epsilon, m)) << '\n';
  }
  run.sidecar("kernel_profile_p" + tag(c.p) + "_eps" + tag(c.epsilon) + ".csv", prof.str());
  std::ostringstream moll;
  m.write_profile_csv(moll);
  run.sidecar("mollifier.csv", moll.str());
}

// ---- gowers

void suite_gowers(const ExperimentConfig& c, Report& rep, const MollifierPair& m) {
  Runner run(rep, "gowers");

  run.check("u3_recursive_vs_brute_z16",
            "U3 via sum_h |Delta_h F|_U2^4 equals the definitional cube sum on Z_16", [&] {
              Rng r = Rng::stream(c.seed, 101);
              double worst = 0.0;
              for (int i = 0; i < 10; ++i) {
                auto F = random_grid(16, 1, r);
                worst = std::max(worst, rel_diff(u3_sum_recursive(F).real(), u3_sum_brute(F).real()));
              }
              return at_most(worst, 1e-10, {{"functions", 10}});
            });

  run.check("u3_recursive_vs_brute_z8sq", "the same identity on Z_8^2", [&] {
    Rng r = Rng::stream(c.seed, 102);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      auto F = random_grid(8, 2, r);
      worst = std::max(worst, rel_diff(u3_sum_recursive(F).real(), u3_sum_brute(F).real()));
    }
    return at_most(worst, 1e-10, {{"functions", 2}});
  });

  run.check("u2_spectral_identity",
            "|F|_U2^4 equals M^{-d} sum |F^|^4 on Z_64", [&] {
              Rng r = Rng::stream(c.seed, 103);
              double worst = 0.0;
              for (int i = 0; i < 20; ++i) {
                auto F = random_grid(64, 1, r);
                worst = std::max(worst, rel_diff(u2_sum_brute(F), u2_sum_spectral(F)));
              }
              return at_most(worst, 1e-10, {{"functions", 20}});
            });

  for (auto [pv, t] : {std::pair{1.5, 2.0}, std::pair{3.0, 5.0}}) {
    run.check("tensorization_p" + tag(pv) + "_t" + tag(t),
              "U3 norm of the product cutoff times e^{it|y|_p^p} is the square of the 1-D norm",
              [&] {
                auto tc = u3_tensor_check(LpExponent(pv), t, 2, 64);
                return at_most(tc.relative_gap, 1e-2,
                               {{"lhs", tc.lhs}, {"rhs", tc.rhs}, {"undersampled", tc.undersampled}});
              });
  }

  run.check("kernel_distance_growth_low_dimension",
            "|chi(omega^eta - omega^eps)|_U3 in d = 1, far below the dimension threshold", [&] {
              const LpExponent p(1.5);
              GridSpec g = kernel_grid(p, 1.0, 1, 2048);
              Values vals;
              double prev = -1.0;
              bool increasing = true;
              for (double eta : {0.05, 0.025, 0.0125}) {
                double v = u3_kernel_distance(eta, 0.1, p, g, m).value;
                vals.push_back({"eta_" + tag(eta), v});
                increasing = increasing && v > prev;
                prev = v;
              }
              return holds(increasing, vals,
                           "distance increases as eta shrinks (no decay available in d = 1)");
            });

  run.check("form_control_random_pairs",
            "|int int f(x) f(x+y) f(x+2y) g(y)| <= C N lambda^{1/2} |g|_U3", [&] {
              Rng r = Rng::stream(c.seed, 104);
              const double N = 32.0, h = 0.25, lambda = 4.0;
              double worst = 0.0;
              for (int s = 0; s < 20; ++s) {
                BoxFunction f(1, N, h);
                for (std::size_t i = 0; i < f.size(); ++i) f[i] = r.uniform(-1.0, 1.0);
                auto g = CyclicGridFunction::zeros(256, 1, h);
                for (int i = 0; i * h <= lambda; ++i) g.values[i] = {r.normal(), r.normal()};
                worst = std::max(worst, u3_form_control_check(f, g, lambda).ratio);
              }
              return at_most(worst, 10.0, {{"pairs", 20}});
            });

  Rng r = Rng::stream(c.seed, 105);
  std::ostringstream prof;
  write_delta_profile_csv(random_grid(16, 1, r), prof);
  run.sidecar("delta_profile_z16.csv", prof.str());
}

// ---- forms

double h_for(double N, double lambda, double eps, double p, double cap) {
  // Largest h = N / n below both cap and eps lambda / (8p).
  double h_max = std::min(cap, eps * lambda / (8.0 * p));
  double n = std::ceil(N / h_max - 1e-9);
  return N / n;
}

void suite_forms(const ExperimentConfig& c, Report& rep, const MollifierPair& m) {
  Runner run(rep, "forms");
  const LpExponent p(c.p);
  const double N = c.N;

  run.check("decomposition_d1", "M^eps_lambda - c1 M_lambda - E_lambda = 0", [&] {
    const double lambda = N / 8.0;
    double h = h_for(N, lambda, c.epsilon, c.p, 0.25);
    Rng r = Rng::stream(c.seed, 201);
    auto f = unit_cell_set(1, N, h, 0.4, r);
    auto t = form_triple(f, p, lambda, c.epsilon, m);
    return at_most(std::abs(t.decomposition_residual), 1e-10,
                   {{"M", t.m.value}, {"M_eps", t.m_eps.value}, {"E", t.e.value}, {"c1", t.c1}});
  });

  run.check("decomposition_d2", "M^eps_lambda - c1 M_lambda - E_lambda = 0 in the plane", [&] {
    const double n2 = 8.0, lambda = 2.0, eps = 0.25;
    double h = h_for(n2, lambda, eps, c.p, 0.25);
    Rng r = Rng::stream(c.seed, 202);
    auto f = unit_cell_set(2, n2, h, 0.5, r);
    auto t = form_triple(f, p, lambda, eps, m);
    return at_most(std::abs(t.decomposition_residual), 1e-10,
                   {{"M", t.m.value}, {"M_eps", t.m_eps.value}, {"E", t.e.value}});
  });

  run.check("m_lambda_constant_oracle",
            "M_lambda(1) = int (N - 2|y|) omega_lambda(y) dy for the constant function", [&] {
              const double lambda = N / 8.0, h = 0.25;
              auto f = BoxFunction::constant(1, N, h, 1.0);
              double v = m_lambda(f, p, lambda, m).value;
              KernelParams kp{p, 1, lambda, 1.0};
              const double R = kernel_support_radius(p, lambda);
              double oracle = 2.0 * gl_integrate(
                                        [&](double y) {
                                          double yy[1] = {y};
                                          return (N - 2.0 * y) * omega_eps_eval(yy, kp, m);
                                        },
                                        0.0, R, 20, 400);
              return at_most(rel_diff(v, oracle), 1e-4, {{"M", v}, {"oracle", oracle}});
            });

  run.check("n_lambda_boundary_oracle",
            "N_lambda(1) = int prod (N - 2|y_i|) dsigma_lambda for the Euclidean circle", [&] {
              const double n2 = 32.0, lambda = 4.0;
              auto f = BoxFunction::constant(2, n2, 0.5, 1.0);
              auto q = sphere_quadrature(LpExponent(2.0), 2, lambda, 64,
                                         QuadratureMode::deterministic_graph);
              double v = n_lambda(f, lambda, q).value;
              // dsigma_lambda = dtheta / 2 (total mass pi)
              double oracle = 0.5 * gl_integrate(
                                        [&](double th) {
                                          return (n2 - 2.0 * lambda * std::abs(std::cos(th))) *
                                                 (n2 - 2.0 * lambda * std::abs(std::sin(th)));
                                        },
                                        0.0, 2.0 * kPi, 20, 64);
              return at_most(rel_diff(v, oracle), 0.05, {{"N_lambda", v}, {"oracle", oracle}});
            });

  run.check("pigeonhole_random_sets",
            "at least delta L / 2 boxes carry density delta / 2 (integer counts)", [&] {
              Rng r = Rng::stream(c.seed, 203);
              int ok = 0;
              for (int s = 0; s < 100; ++s) {
                int d = 1 + s % 2;
                double n = d == 1 ? 64.0 : 32.0;
                BoxFunction f(d, n, 1.0);
                double delta = r.uniform(0.05, 0.9);
                for (std::size_t i = 0; i < f.size(); ++i) f[i] = r.bernoulli(delta) ? 1.0 : 0.0;
                if (box_partition_pigeonhole(f, d == 1 ? 8.0 : 4.0).certificate) ++ok;
              }
              return at_least(ok, 100);
            });

  run.check("energy_sum_j_stability",
            "sum_j |E_{lambda_j}(f)|^2 <= C N^d |f|_4^4 with C independent of J", [&] {
              // Theorem-style sequences 1.5 * 2^{j-1} (lambda_1 > 1, lambda_J <= N / 4).
              const double n1 = 128.0, h = h_for(n1, 1.5, 0.25, c.p, 1.0 / 32.0);
              double worst3 = 0.0, worst5 = 0.0;
              Rng r = Rng::stream(c.seed, 204);
              for (int s = 0; s < 20; ++s) {
                auto f = unit_cell_set(1, n1, h, 0.3, r);
                worst3 = std::max(worst3, energy_sum(f, p, lacunary_generate(1.5, 2.0, 3).values, 0.25, m).ratio);
                worst5 = std::max(worst5, energy_sum(f, p, lacunary_generate(1.5, 2.0, 5).values, 0.25, m).ratio);
              }
              return at_most(worst5 / worst3, 2.0, {{"max_ratio_J3", worst3}, {"max_ratio_J5", worst5}});
            });

  run.check("main_term_positive",
            "M_lambda(f) >= c(delta) N^d for sets of density delta", [&] {
              auto rep2 = roth_main_term_experiment(0.5, p, 1, N, N / 8.0, 8, m, c.seed);
              return holds(rep2.all_positive && rep2.min_normalized > 0.0,
                           {{"min_normalized", rep2.min_normalized}, {"c_omega", rep2.c_omega}},
                           "every trial strictly positive");
            });
}

// ---- oscillatory

void suite_oscillatory(const ExperimentConfig& c, Report& rep, const MollifierPair& m) {
  Runner run(rep, "oscillatory");
  const int samples = c.decay_samples;

  std::vector<double> ps{c.p};
  for (double q : {1.0, 2.0, 3.0})
    if (q != c.p) ps.push_back(q);
  for (double pv : ps) {
    const LpExponent p(pv);
    run.check("decay_dichotomy_p" + tag(pv),
              p.degenerate() ? "|I(t)| does not decay when p is 1 or 2"
                             : "|I(t)| <= C |t|^{-1/r(p)}",
              [&] {
                auto fit = decay_fit(p, 10.0, 1e4, samples);
                std::ostringstream csv;
                write_decay_csv(fit, csv);
                run.sidecar("decay_p" + tag(pv) + ".csv", csv.str());
                Values extra{{"slope", fit.slope}, {"r", fit.r_theory}};
                if (p.degenerate()) return at_least(fit.slope, -0.02, extra);
                return at_most(fit.slope, -1.0 / fit.r_theory + 0.05, extra);
              });
  }

  run.check("decay_self_consistency", "refining the quadrature changes I(t) by < 1e-3", [&] {
    const LpExponent p(c.p);
    double worst = 0.0;
    for (double t : {100.0, 1e4}) {
      double a = i_of_t(p, t), b = i_of_t(p, t, OscillatoryBudget{}.refined());
      worst = std::max(worst, rel_diff(a, b));
    }
    return at_most(worst, 1e-3);
  });

  run.check("decay_even_in_t", "I(t) = I(-t)", [&] {
    const LpExponent p(c.p);
    return at_most(rel_diff(i_of_t(p, 50.0), i_of_t(p, -50.0)), 1e-10);
  });

  run.check("phase_constant_p2", "psi_{k,l} = 2kl when p = 2", [&] {
    Rng r = Rng::stream(c.seed, 301);
    double worst = 0.0;
    int n = 0;
    while (n < 10000) {
      PhaseFamily fam{LpExponent(2.0), r.uniform(-0.5, 0.5), r.uniform(-0.5, 0.5), phi_plus()};
      double y = r.uniform(0.25, 2.5);
      if (!fam.admissible(y)) continue;
      ++n;
      worst = std::max(worst, std::abs(phase_eval(fam, y).value - 2.0 * fam.k * fam.l));
    }
    return at_most(worst, 1e-12, {{"points", n}});
  });

  run.check("phase_taylor_derivative_p3",
            "psi' from the Taylor remainder equals direct differentiation", [&] {
              Rng r = Rng::stream(c.seed, 302);
              double worst = 0.0;
              int n = 0;
              while (n < 2000) {
                PhaseFamily fam{LpExponent(3.0), r.uniform(-0.5, 0.5), r.uniform(-0.5, 0.5),
                                phi_plus()};
                double y = r.uniform(0.25, 2.5);
                if (!fam.admissible(y)) continue;
                ++n;
                worst = std::max(worst, std::abs(phase_eval_taylor(fam, y).derivative -
                                                 phase_eval(fam, y).derivative));
              }
              return at_most(worst, 1e-8, {{"points", n}});
            });

  run.check("stationary_exponent_p3", "min |psi'| scales like eta^{p-1} away from k, l = 0", [&] {
    double etas[] = {0.2, 0.1, 0.05};
    auto s = stationary_lower_bound_check(LpExponent(3.0), etas);
    return at_most(std::abs(s.fitted_exponent - 2.0), 0.3,
                   {{"exponent", s.fitted_exponent}, {"min_eta_0.05", s.minima.back()}});
  });

  if (c.p != 2.0 && c.p != 1.0 && c.p != 3.0) {
    run.check("stationary_monotone_p" + tag(c.p), "min |psi'| decreases as eta shrinks", [&] {
      double etas[] = {0.2, 0.1, 0.05};
      auto s = stationary_lower_bound_check(LpExponent(c.p), etas);
      bool dec = s.minima[0] > s.minima[1] && s.minima[1] > s.minima[2] && s.minima[2] > 0.0;
      return holds(dec, {{"exponent", s.fitted_exponent}}, "strictly decreasing and positive");
    });
  }

  run.check("lacunary_sums", "sum min(mu_j, 1/mu_j) <= 4 for lacunary mu", [&] {
    Rng r = Rng::stream(c.seed, 303);
    double worst = 0.0;
    bool ok = true;
    for (int s = 0; s < 100; ++s) {
      std::vector<double> mu;
      double v = std::exp(r.uniform(std::log(1e-4), std::log(10.0)));
      int J = 1 + static_cast<int>(r.below(30));
      for (int j = 0; j < J; ++j) {
        mu.push_back(v);
        v *= r.uniform(2.0, 4.0);
      }
      auto ls = lacunary_sum_bound(mu, 1 + static_cast<int>(r.below(3)));
      worst = std::max({worst, ls.min_sum, ls.weighted_sum});
      ok = ok && ls.holds;
    }
    return at_most(ok ? worst : INFINITY, 4.0);
  });

  const LpExponent pm(c.p == 1.0 || c.p == 2.0 ? 1.5 : c.p);
  // Below eps ~ 1/2 the J = 6 truncation has not settled at a few percent of
  // generic xi (the kernel transforms decay only past |x| ~ 6 / eps). For
  // p > 2 the transforms decay later still and eps = 1 is needed.
  const double eps_m = pm.value() > 2.0 ? 1.0 : 0.5;
  std::vector<double> l6, l12;
  for (int j = 1; j <= 12; ++j) {
    double v = 1.5 * std::pow(2.0, j - 1);
    if (j <= 6) l6.push_back(v);
    l12.push_back(v);
  }
  MultiplierEvaluator e6(pm, l6, eps_m, m, 1.0), e12(pm, l12, eps_m, m, 1.0);

  run.check("multiplier_j_uniformity", "|m(xi)| stays bounded uniformly in J", [&] {
    Rng r = Rng::stream(c.seed, 304);
    int n = 0, within = 0;
    double worst = 0.0, max_m = 0.0;
    std::ostringstream csv;
    csv << "dist,abs_m,grad\n";
    while (n < 100) {
      double a = r.uniform(-1, 1), b = r.uniform(-1, 1), z = r.uniform(-1, 1);
      if (gamma_prime_distance(a, b, z) < 0.1) continue;
      ++n;
      double m6 = std::abs(e6.value(a, b, z));
      auto au = e12.audit(a, b, z);
      double m12 = std::abs(au.m);
      csv << sci(au.dist) << ',' << sci(m12) << ',' << sci(au.grad) << '\n';
      max_m = std::max(max_m, m12);
      double ratio = std::max(m6, m12) / std::max(std::min(m6, m12), 1e-300);
      worst = std::max(worst, ratio);
      if (ratio < 2.0) ++within;
    }
    run.sidecar("multiplier_audit.csv", csv.str());
    return at_most(worst, 2.0, {{"points_within", within}, {"max_abs_m", max_m}, {"epsilon", eps_m}});
  });

  run.check("multiplier_vanishes_on_eta_zero", "m(xi) = 0 when xi1 - xi2 + xi3 = 0", [&] {
    Rng r = Rng::stream(c.seed, 305);
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      double a = r.uniform(-0.4, 0.4), z = r.uniform(-0.4, 0.4);
      worst = std::max(worst, std::abs(e12.value(a, a + z, z)));
    }
    return at_most(worst, 1e-8);
  });

  run.check("multiplier_gradient_scaling",
            "|grad m| dist(xi, Gamma') stays bounded as xi approaches Gamma'", [&] {
              // xi = s v + dist (cos t n1 + sin t n2): v spans Gamma', n1 and n2 span
              // its normal plane. The bound is a sup, so compare sups per shell.
              const double r6 = 1.0 / std::sqrt(6.0), r3 = 1.0 / std::sqrt(3.0),
                           r2 = 1.0 / std::sqrt(2.0);
              const double v[3] = {-2.0 * r6, -r6, r6};
              const double n1[3] = {-r3, r3, -r3};
              const double n2[3] = {0.0, r2, r2};
              double prod[2] = {0.0, 0.0};
              int i = 0;
              for (double dist : {0.1, 0.01}) {
                Rng r = Rng::stream(c.seed, 306);
                for (int q = 0; q < 100; ++q) {
                  double s = r.uniform(-0.6, 0.6), t = r.uniform(0.0, 2.0 * kPi);
                  double x[3];
                  for (int k = 0; k < 3; ++k)
                    x[k] = s * v[k] + dist * (std::cos(t) * n1[k] + std::sin(t) * n2[k]);
                  auto au = e12.audit(x[0], x[1], x[2]);
                  prod[i] = std::max(prod[i], au.grad * au.dist);
                }
                ++i;
              }
              double ratio = std::max(prod[0], prod[1]) / std::max(std::min(prod[0], prod[1]), 1e-300);
              return at_most(ratio, 4.0,
                             {{"sup_grad_dist_0.1", prod[0]}, {"sup_grad_dist_0.01", prod[1]}});
            });
}

// ---- counterexamples

void suite_counterexamples(const ExperimentConfig& c, Report& rep) {
  Runner run(rep, "counterexamples");
  const PointSet B = PointSet::bourgain(2);
  const ProbeBox box{0.0, 10.0};

  run.check("bourgain_obstruction_p2",
            "every 3-AP gap in the Bourgain set has dist(2|y|^2, Z) <= 4/10", [&] {
              auto s = gap_spectrum_sample(B, LpExponent(2.0), c.spectrum_samples, box, c.seed);
              std::ostringstream csv;
              s.write_csv(csv);
              run.sidecar("gap_spectrum_bourgain_p2.csv", csv.str());
              bool full = s.gaps.size() == c.spectrum_samples;
              return at_most(full ? s.max_half_integer_offset : INFINITY, 0.4 + 1e-9,
                             {{"hits", static_cast<double>(s.gaps.size())},
                              {"proposals", static_cast<double>(s.proposals)}});
            });

  run.check("bourgain_forbidden_gap_probe",
            "no progression with |y|_2^2 = 0.75 exists in the Bourgain set", [&] {
              auto r = progression_search(B, LpExponent(2.0), std::sqrt(0.75), 1e-3, c.search_budget,
                                          c.seed, box);
              return holds(!r.witness && r.proposals == c.search_budget,
                           {{"proposals", static_cast<double>(r.proposals)}},
                           "budget exhausted without a witness");
            });

  run.check("bourgain_witness_at_allowed_gap", "|y|_2 = 1 is realized in the Bourgain set", [&] {
    auto r = progression_search(B, LpExponent(2.0), 1.0, 1e-3, c.search_budget, c.seed, box);
    return holds(r.witness && verify_witness(B, *r.witness),
                 {{"proposals", static_cast<double>(r.proposals)}}, "verified witness found");
  });

  run.check("lp_escape_p1.5",
            "l^1.5 gaps in the Bourgain set are not confined near half-integers", [&] {
              auto s = gap_spectrum_sample(B, LpExponent(1.5), c.spectrum_samples, box, c.seed + 1);
              std::ostringstream csv;
              s.write_csv(csv);
              run.sidecar("gap_spectrum_bourgain_p1.5.csv", csv.str());
              return at_least(s.max_half_integer_offset, 0.45,
                              {{"hits", static_cast<double>(s.gaps.size())}});
            });

  run.check("parallelogram_identity_p2",
            "2|y|^2 = |x|^2 + |x+2y|^2 - 2|x+y|^2", [&] {
              Rng r = Rng::stream(c.seed, 401);
              double worst = 0.0;
              for (int s = 0; s < 1000; ++s) {
                double x[2] = {r.uniform(-10, 10), r.uniform(-10, 10)};
                double y[2] = {r.uniform(-10, 10), r.uniform(-10, 10)};
                worst = std::max(worst, std::abs(parallelogram_check(x, y, LpExponent(2.0)).gap));
              }
              return at_most(worst, 1e-10);
            });

  run.check("parallelogram_fails_p1.5", "the l^p analogue does not vanish for p = 1.5", [&] {
    double x[2] = {1.0, 1.0}, y[2] = {1.0, 0.0};
    double g = std::abs(parallelogram_check(x, y, LpExponent(1.5)).gap);
    return at_least(g, 1e-3);
  });

  run.check("lattice_cube_obstruction",
            "differences in Z^d + eps0[-1,1]^d have |y|_inf and |y|_1 near integers", [&] {
              const double eps0 = 0.05;
              Rng r = Rng::stream(c.seed, 402);
              double worst_inf = 0.0, worst_one = 0.0;
              const int d = 3;
              for (int s = 0; s < 10000; ++s) {
                double x[d], z[d], y[d];
                for (int k = 0; k < d; ++k) {
                  x[k] = std::round(r.uniform(-20, 20)) + r.uniform(-eps0, eps0);
                  z[k] = std::round(r.uniform(-20, 20)) + r.uniform(-eps0, eps0);
                  y[k] = z[k] - x[k];
                }
                double ni = 0.0, n1 = 0.0;
                for (double v : y) {
                  ni = std::max(ni, std::abs(v));
                  n1 += std::abs(v);
                }
                worst_inf = std::max(worst_inf, std::abs(ni - std::round(ni)) / (2 * eps0));
                worst_one = std::max(worst_one, std::abs(n1 - std::round(n1)) / (2 * d * eps0));
              }
              return at_most(std::max(worst_inf, worst_one), 1.0 + 1e-9,
                             {{"inf_ratio", worst_inf}, {"one_ratio", worst_one}});
            });

  run.check("bourgain_density", "the Bourgain set has density about 1/5", [&] {
    auto dn = estimate_density(B, box, 1'000'000, c.seed);
    bool ok = dn.value >= 0.15 && dn.value <= 0.35;
    return holds(ok, {{"density", dn.value}, {"std_error", dn.std_error}}, "density in [0.15, 0.35]");
  });

  run.check("full_box_spectrum_dense", "without constraints the l^1.5 gaps fill an interval", [&] {
    const double N = 10.0;
    auto s = gap_spectrum_sample(PointSet::full_box(2, N), LpExponent(1.5), c.spectrum_samples,
                                 ProbeBox{0.0, N}, c.seed + 2);
    return at_most(s.max_hole(0.0, N / 2.0), 0.1, {{"hits", static_cast<double>(s.gaps.size())}});
  });
}

// ---- search

void suite_search(const ExperimentConfig& c, Report& rep) {
  Runner run(rep, "search");
  const LpExponent p(c.p);
  const auto seq = lacunary_generate(2.0, 2.0, 3);

  run.check("theorem_positive_control",
            "a dense set contains a progression with |y|_p = lambda_j for some j", [&] {
              auto t = theorem_experiment(0.4, p, c.d, c.N, seq, c.theorem_seeds, c.seed);
              std::vector<ProgressionWitness> all;
              bool sound = true;
              for (const auto& s : t.seeds)
                for (const auto& w : s.witnesses) {
                  all.push_back(w);
                  sound = sound && std::abs(w.gap - w.target) <= w.tolerance;
                }
              std::ostringstream csv;
              write_witnesses_csv(all, csv);
              run.sidecar("witnesses.csv", csv.str());
              return holds(t.all_seeds_realize && sound,
                           {{"seeds", static_cast<double>(c.theorem_seeds)},
                            {"seeds_realizing", static_cast<double>(t.seeds_realizing)},
                            {"tolerance", t.tolerance}},
                           "every seed realizes at least one lambda_j");
            });

  run.check("theorem_full_density", "the full box realizes every lambda_j", [&] {
    auto t = theorem_experiment(1.0, p, c.d, c.N, seq, 3, c.seed);
    bool ok = true;
    for (const auto& s : t.seeds) ok = ok && s.realized.size() == seq.values.size();
    return holds(ok, {{"seeds", 3}}, "all j realized for all seeds");
  });

  run.check("forbidden_gap_control_p2",
            "the Bourgain set omits every gap with 2 lambda^2 a half-odd integer", [&] {
              double lams[] = {std::sqrt(0.75), std::sqrt(3.25), std::sqrt(13.25)};
              auto ctl = forbidden_gap_control(lams, 1e-3, 1'000'000, c.seed);
              return holds(ctl.realized == 0, {{"realized", ctl.realized}}, "no gap realized");
            });

  run.check("lacunary_certificate", "ratio < 2 is rejected, ratio >= 2 accepted", [&] {
    bool rejected = false;
    try {
      lacunary_generate(1.5, 1.9, 4);
    } catch (const Error&) {
      rejected = true;
    }
    auto s = lacunary_generate(1.5, 2.0, 5);
    bool ok = rejected && s.values.size() == 5 && s.values[4] == 24.0 && s.min_ratio >= 2.0;
    return holds(ok, {{"min_ratio", s.min_ratio}}, "certificate consistent");
  });
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Report run_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  Report rep;
  rep.config = cfg;
  rep.timestamp = utc_now();
  auto t0 = Clock::now();
  const MollifierPair m = MollifierPair::build();
  const Suite s = *cfg.suite;
  const bool all = s == Suite::verify_all;
  if (all || s == Suite::kernels) suite_kernels(cfg, rep, m);
  if (all || s == Suite::gowers) suite_gowers(cfg, rep, m);
  if (all || s == Suite::forms) suite_forms(cfg, rep, m);
  if (all || s == Suite::oscillatory) suite_oscillatory(cfg, rep, m);
  if (all || s == Suite::counterexamples) suite_counterexamples(cfg, rep);
  if (all || s == Suite::search) suite_search(cfg, rep);
  rep.total_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

std::string suite_listing() {
  std::string out;
  for (Suite s : all_suites()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-16s %s\n", suite_name(s), suite_description(s));
    out += buf;
  }
  return out;
}

std::string report_schema() {
  return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "lproth report",
  "type": "object",
  "required": ["format", "tool", "config", "records", "summary", "timing"],
  "properties": {
    "format": {"const": 1},
    "tool": {"const": "lproth"},
    "config": {
      "type": "object",
      "required": ["suite", "p", "d", "N", "epsilon", "seed"],
      "properties": {
        "suite": {"enum": ["kernels", "gowers", "forms", "oscillatory", "counterexamples", "search", "verify-all"]},
        "p": {"type": "number"},
        "d": {"type": "integer"},
        "N": {"type": "number"},
        "epsilon": {"type": "number"},
        "seed": {"type": "integer", "minimum": 0},
        "search_budget": {"type": "integer"},
        "spectrum_samples": {"type": "integer"},
        "decay_samples": {"type": "integer"},
        "theorem_seeds": {"type": "integer"}
      }
    },
    "records": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["index", "suite", "name", "anchor", "values", "bound", "pass", "margin"],
        "properties": {
          "index": {"type": "integer"},
          "suite": {"type": "string"},
          "name": {"type": "string", "minLength": 1},
          "anchor": {"type": "string", "minLength": 1},
          "values": {"type": "object", "additionalProperties": {"type": ["number", "null"]}},
          "bound": {"type": "string"},
          "pass": {"type": "boolean"},
          "margin": {"type": ["number", "null"]}
        }
      }
    },
    "summary": {
      "type": "object",
      "required": ["total", "passed", "failed"],
      "properties": {
        "total": {"type": "integer"},
        "passed": {"type": "integer"},
        "failed": {"type": "integer"},
        "worst_margin": {"type": ["number", "null"]},
        "worst_record": {"type": "string"},
        "sidecars": {"type": "array", "items": {"type": "string"}}
      }
    },
    "timing": {
      "type": "object",
      "required": ["timestamp", "total_seconds", "record_seconds"],
      "properties": {
        "timestamp": {"type": "string"},
        "total_seconds": {"type": "number"},
        "record_seconds": {"type": "array", "items": {"type": "number"}}
      }
    }
  }
}
)";
}

}  // namespace lproth
