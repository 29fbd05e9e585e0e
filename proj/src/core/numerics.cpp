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

#include "lproth/core/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

#include "lproth/core/error.hpp"

namespace lproth {

unsigned worker_count() {
  if (const char* env = std::getenv("LPROTH_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  map_chunks<char>(
      n,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) body(i);
        return char{0};
      },
      std::max<std::size_t>(1, std::min<std::size_t>(n, 256)));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t master, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double smoothstep4(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double x5 = x * x * x * x * x;
  return x5 * (126.0 + x * (-420.0 + x * (540.0 + x * (-315.0 + x * 70.0))));
}

double SplineBump::operator()(double x) const {
  if (x <= outer_lo || x >= outer_hi) return 0.0;
  if (x < inner_lo) return smoothstep4((x - outer_lo) / (inner_lo - outer_lo));
  if (x > inner_hi) return smoothstep4((outer_hi - x) / (outer_hi - inner_hi));
  return 1.0;
}

const QuadRule& gauss_legendre(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, QuadRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  require(n >= 1, "gauss_legendre: n must be positive");
  // legendre_p_zeros returns the nonnegative zeros in increasing order.
  std::vector<double> half = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  QuadRule rule;
  for (auto it2 = half.rbegin(); it2 != half.rend(); ++it2) {
    if (*it2 == 0.0) continue;
    rule.nodes.push_back(-*it2);
  }
  for (double z : half) rule.nodes.push_back(z);
  for (double x : rule.nodes) {
    double dp = boost::math::legendre_p_prime(static_cast<int>(n), x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    unsigned n, unsigned panels) {
  const QuadRule& r = gauss_legendre(n);
  CompensatedSum acc;
  double w = (b - a) / panels;
  for (unsigned k = 0; k < panels; ++k) {
    double lo = a + w * k;
    double mid = lo + 0.5 * w;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      acc.add(0.5 * w * r.weights[i] * f(mid + 0.5 * w * r.nodes[i]));
  }
  return acc.get();
}

TanhSinhRule tanh_sinh_unit(double step, double t_max) {
  TanhSinhRule rule;
  long kmax = static_cast<long>(std::ceil(t_max / step));
  for (long k = -kmax; k <= kmax; ++k) {
    double t = k * step;
    double u = 0.5 * kPi * std::sinh(t);
    // s = (1 + tanh u)/2 = 1/(1+e^{-2u}), 1 - s = 1/(1+e^{2u})
    double s = 1.0 / (1.0 + std::exp(-2.0 * u));
    double sc = 1.0 / (1.0 + std::exp(2.0 * u));
    double ch = std::cosh(u);
    double w = 0.5 * step * 0.5 * kPi * std::cosh(t) / (ch * ch);
    if (s <= 0.0 || sc <= 0.0 || w <= 0.0 || !std::isfinite(w)) continue;
    rule.s.push_back(s);
    rule.one_minus_s.push_back(sc);
    rule.weights.push_back(w);
  }
  return rule;
}

IntegralResult adaptive_integrate(const std::function<double(double)>& f, double a,
                                  double b, std::span<const double> breaks,
                                  double rel_tol, double abs_tol,
                                  bool throw_on_failure) {
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  CompensatedSum val;
  double err_total = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    double v = GK::integrate(f, pts[i], pts[i + 1], 15, rel_tol, &err);
    val.add(v);
    err_total += err;
  }
  IntegralResult res{val.get(), err_total};
  double allowed = std::max(abs_tol, rel_tol * std::abs(res.value)) * 10.0;
  if (throw_on_failure && !(res.error <= allowed) && res.error > 1e-14) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "adaptive quadrature did not converge (error estimate %.3g on %.12g)", res.error,
                  res.value);
    fail(ErrorCode::quadrature_failure, buf);
  }
  return res;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size() && x.size() >= 2, "least_squares: need >= 2 points");
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0, "least_squares: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace lproth
