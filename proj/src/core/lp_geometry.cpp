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

#include "lproth/core/lp_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lproth/core/error.hpp"
#include "lproth/core/numerics.hpp"

namespace lproth {

LpExponent::LpExponent(double p) : p_(p) {
  require(std::isfinite(p) && p >= 1.0, "exponent p must be finite and >= 1");
}

double LpExponent::r() const { return std::max(p_ + 1.0, 2.0 * p_ - 1.0); }

void LpExponent::require_nondegenerate(const std::string& who) const {
  require(!degenerate(), who + ": p in {1, 2} is excluded");
}

void require_finite(std::span<const double> y, const std::string& who) {
  require(!y.empty(), who + ": empty vector");
  for (double v : y) require(std::isfinite(v), who + ": non-finite coordinate");
}

double lp_power_sum(std::span<const double> y, const LpExponent& p) {
  CompensatedSum s;
  for (double v : y) s.add(std::pow(std::abs(v), p.value()));
  return s.get();
}

double lp_norm(std::span<const double> y, const LpExponent& p) {
  require_finite(y, "lp_norm");
  if (p.is_two()) {
    // hypot-style scaling keeps p = 2 exact on Pythagorean inputs
    double acc = 0.0;
    for (double v : y) acc = std::hypot(acc, v);
    return acc;
  }
  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  CompensatedSum s;
  for (double v : y) s.add(std::pow(std::abs(v) / scale, p.value()));
  return scale * std::pow(s.get(), 1.0 / p.value());
}

double grad_q_magnitude(std::span<const double> y, const LpExponent& p) {
  require_finite(y, "grad_q_magnitude");
  bool nonzero = std::any_of(y.begin(), y.end(), [](double v) { return v != 0.0; });
  require(nonzero, "grad_q_magnitude: density undefined at the origin");
  CompensatedSum s;
  for (double v : y) s.add(std::pow(std::abs(v), 2.0 * (p.value() - 1.0)));
  return p.value() * std::sqrt(s.get());
}

double unit_ball_volume(const LpExponent& p, int d) {
  require(d >= 1, "unit_ball_volume: d must be >= 1");
  double pv = p.value();
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / pv), d) / std::tgamma(1.0 + d / pv);
}

MonteCarloEstimate unit_ball_volume_mc(const LpExponent& p, int d, std::uint64_t samples,
                                       std::uint64_t seed) {
  require(d >= 1, "unit_ball_volume_mc: d must be >= 1");
  if (d > 6) fail(ErrorCode::unsupported, "unit_ball_volume_mc: d > 6 not supported");
  require(samples > 0, "unit_ball_volume_mc: need samples");
  constexpr std::size_t kChunks = 64;
  auto hits = map_chunks<std::uint64_t>(
      samples,
      [&](std::size_t b, std::size_t e) {
        Rng rng = Rng::stream(seed, b);
        std::uint64_t h = 0;
        for (std::size_t i = b; i < e; ++i) {
          double s = 0.0;
          for (int k = 0; k < d; ++k) s += std::pow(std::abs(rng.uniform(-1.0, 1.0)), p.value());
          if (s <= 1.0) ++h;
        }
        return h;
      },
      kChunks);
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  double n = static_cast<double>(samples);
  double frac = total / n;
  double box = std::pow(2.0, d);
  return {box * frac, box * std::sqrt(frac * (1.0 - frac) / n), samples};
}

double SphereQuadrature::total_mass() const {
  CompensatedSum s;
  for (double w : weights) s.add(w);
  return s.get();
}

double SphereQuadrature::orthant_mass(unsigned sign_bits) const {
  CompensatedSum s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    unsigned bits = 0;
    for (int k = 0; k < d; ++k)
      if (nodes[i][k] < 0.0) bits |= 1u << k;
    if (bits == sign_bits) s.add(weights[i]);
  }
  return s.get();
}

void SphereQuadrature::write_csv(std::ostream& out) const {
  for (int k = 0; k < d; ++k) out << "y" << k << ",";
  out << "weight\n";
  char buf[32];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int k = 0; k < d; ++k) {
      std::snprintf(buf, sizeof buf, "%.17e", nodes[i][k]);
      out << buf << ",";
    }
    std::snprintf(buf, sizeof buf, "%.17e", weights[i]);
    out << buf << "\n";
  }
}

namespace {

struct OrthantNode {
  VecD t;  // t_i = |y_i|^p, summing to lambda^p
  double weight;
};

// Positive-orthant rule for the folded density p^{-d} prod t_i^{1/p-1} dt'.
std::vector<OrthantNode> positive_orthant_rule(double p, int d, double lambda,
                                               std::uint64_t n) {
  const double alpha = 1.0 / p - 1.0;
  const double big_l = std::pow(lambda, p);
  const double norm = std::pow(lambda, p - d) * std::pow(p, -d);
  std::vector<OrthantNode> out;
  if (d == 1) {
    // S_lambda is the two points +-lambda; |grad Q| = p lambda^{p-1}
    out.push_back({{big_l}, std::pow(lambda, p - 1.0) / (p * std::pow(lambda, p - 1.0))});
    return out;
  }
  // The tail of weight * integrand decays like exp(-2u/p); stop once it is
  // far below double precision.
  double t_max = std::asinh(12.5 * p);
  double step = 2.0 * t_max / static_cast<double>(std::max<std::uint64_t>(n, 8));
  TanhSinhRule r = tanh_sinh_unit(step, t_max);
  if (d == 2) {
    for (std::size_t i = 0; i < r.s.size(); ++i) {
      double t1 = big_l * r.s[i];
      double t2 = big_l * r.one_minus_s[i];
      double w = norm * std::pow(t1, alpha) * std::pow(t2, alpha) * big_l * r.weights[i];
      out.push_back({{t1, t2}, w});
    }
    return out;
  }
  // d == 3: t = L (a, (1-a) b, (1-a)(1-b)), dt1 dt2 = L^2 (1-a) da db
  for (std::size_t i = 0; i < r.s.size(); ++i) {
    double a = r.s[i], ac = r.one_minus_s[i];
    for (std::size_t j = 0; j < r.s.size(); ++j) {
      double b = r.s[j], bc = r.one_minus_s[j];
      double t1 = big_l * a;
      double t2 = big_l * ac * b;
      double t3 = big_l * ac * bc;
      double w = norm * std::pow(t1, alpha) * std::pow(t2, alpha) * std::pow(t3, alpha) *
                 big_l * big_l * ac * r.weights[i] * r.weights[j];
      if (!(w > 0.0) || !std::isfinite(w)) continue;
      out.push_back({{t1, t2, t3}, w});
    }
  }
  return out;
}

SphereQuadrature deterministic_rule(const LpExponent& p, int d, double lambda,
                                    std::uint64_t n) {
  if (d < 1 || d > 3)
    fail(ErrorCode::unsupported, "sphere_quadrature: deterministic mode needs d in {1,2,3}");
  SphereQuadrature q;
  q.lambda = lambda;
  q.p = p.value();
  q.d = d;
  q.mode = QuadratureMode::deterministic_graph;
  q.node_tolerance = 1e-10;
  auto base = positive_orthant_rule(p.value(), d, lambda, n);
  const unsigned orthants = 1u << d;
  for (unsigned bits = 0; bits < orthants; ++bits) {
    for (const auto& node : base) {
      VecD y(d);
      for (int k = 0; k < d; ++k) {
        double v = std::pow(node.t[k], 1.0 / p.value());
        y[k] = (bits >> k & 1u) ? -v : v;
      }
      q.nodes.push_back(std::move(y));
      q.weights.push_back(node.weight);
    }
  }
  for (const auto& y : q.nodes) {
    double err = std::abs(lp_norm(y, p) - lambda);
    if (err > q.node_tolerance * std::max(1.0, lambda))
      fail(ErrorCode::quadrature_failure, "sphere_quadrature: node off the sphere");
  }
  return q;
}

SphereQuadrature shell_rule(const LpExponent& p, int d, double lambda, std::uint64_t n,
                            std::uint64_t seed) {
  if (d < 1 || d > 8)
    fail(ErrorCode::unsupported, "sphere_quadrature: shell Monte Carlo needs d <= 8");
  require(n > 0, "sphere_quadrature: need a positive sample budget");
  const double h = kShellHalfWidth;
  const double pv = p.value();
  const double half_side = lambda * std::pow(1.0 + h, 1.0 / pv);
  const double lp_pow = std::pow(lambda, pv);
  auto chunks = map_chunks<std::vector<VecD>>(n, [&](std::size_t b, std::size_t e) {
    Rng rng = Rng::stream(seed, b);
    std::vector<VecD> acc;
    VecD y(d);
    for (std::size_t i = b; i < e; ++i) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) {
        y[k] = rng.uniform(-half_side, half_side);
        s += std::pow(std::abs(y[k]), pv);
      }
      if (std::abs(s / lp_pow - 1.0) <= h) acc.push_back(y);
    }
    return acc;
  });
  SphereQuadrature q;
  q.lambda = lambda;
  q.p = pv;
  q.d = d;
  q.mode = QuadratureMode::shell_monte_carlo;
  q.node_tolerance = lambda * (std::pow(1.0 + h, 1.0 / pv) - 1.0);
  double box = std::pow(2.0 * half_side / lambda, d);
  double w = box / (2.0 * h * static_cast<double>(n));
  for (auto& c : chunks)
    for (auto& y : c) {
      q.nodes.push_back(std::move(y));
      q.weights.push_back(w);
    }
  double frac = static_cast<double>(q.nodes.size()) / static_cast<double>(n);
  q.mass_std_error =
      box / (2.0 * h) * std::sqrt(frac * (1.0 - frac) / static_cast<double>(n));
  return q;
}

}  // namespace

SphereQuadrature sphere_quadrature(const LpExponent& p, int d, double lambda,
                                   std::uint64_t n, QuadratureMode mode, std::uint64_t seed) {
  require(std::isfinite(lambda) && lambda > 0.0, "sphere_quadrature: lambda must be > 0");
  if (mode == QuadratureMode::deterministic_graph) return deterministic_rule(p, d, lambda, n);
  return shell_rule(p, d, lambda, n, seed);
}

MassInvarianceReport sigma_mass_invariance(const LpExponent& p, int d,
                                           std::span<const double> lambdas,
                                           std::uint64_t n, QuadratureMode mode,
                                           std::uint64_t seed) {
  require(!lambdas.empty(), "sigma_mass_invariance: no radii");
  MassInvarianceReport rep;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(lambdas[i] > 0.0, "sigma_mass_invariance: radii must be > 0");
    auto q = sphere_quadrature(p, d, lambdas[i], n, mode, seed + i);
    rep.lambdas.push_back(lambdas[i]);
    rep.masses.push_back(q.total_mass());
    rep.std_errors.push_back(q.mass_std_error);
  }
  for (double a : rep.masses)
    for (double b : rep.masses)
      rep.max_relative_deviation =
          std::max(rep.max_relative_deviation, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
  return rep;
}

}  // namespace lproth
