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

#include "lproth/core/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lproth/core/error.hpp"

namespace lproth {

SplineBump phi_plus() { return SplineBump{0.25, 0.5, 2.0, 2.5}; }

double PhaseFamily::support_lo() const {
  return std::max({cutoff.outer_lo, cutoff.outer_lo - k, cutoff.outer_lo - l,
                   cutoff.outer_lo - k - l});
}

double PhaseFamily::support_hi() const {
  return std::min({cutoff.outer_hi, cutoff.outer_hi - k, cutoff.outer_hi - l,
                   cutoff.outer_hi - k - l});
}

bool PhaseFamily::admissible(double y) const {
  return y >= support_lo() && y <= support_hi();
}

double PhaseFamily::amplitude(double y) const {
  return cutoff(y) * cutoff(y + k) * cutoff(y + l) * cutoff(y + k + l);
}

PhaseValue phase_eval(const PhaseFamily& fam, double y) {
  require(std::isfinite(y) && fam.admissible(y), "phase_eval: inadmissible y");
  const double p = fam.p.value();
  const double a = y, b = y + fam.k + fam.l, c = y + fam.k, d = y + fam.l;
  PhaseValue v;
  v.value = std::pow(a, p) + std::pow(b, p) - std::pow(c, p) - std::pow(d, p);
  v.derivative = p * (std::pow(a, p - 1.0) + std::pow(b, p - 1.0) - std::pow(c, p - 1.0) -
                      std::pow(d, p - 1.0));
  return v;
}

PhaseValue phase_eval_taylor(const PhaseFamily& fam, double y, unsigned points) {
  require(std::isfinite(y) && fam.admissible(y), "phase_eval_taylor: inadmissible y");
  const double p = fam.p.value();
  const QuadRule& r = gauss_legendre(points);
  CompensatedSum s2, s3;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    double u = 0.5 * (r.nodes[i] + 1.0);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      double s = 0.5 * (r.nodes[j] + 1.0);
      double w = 0.25 * r.weights[i] * r.weights[j];
      double z = y + u * fam.k + s * fam.l;
      s2.add(w * std::pow(z, p - 2.0));
      s3.add(w * std::pow(z, p - 3.0));
    }
  }
  const double kl = fam.k * fam.l;
  return {kl * p * (p - 1.0) * s2.get(), kl * p * (p - 1.0) * (p - 2.0) * s3.get()};
}

OscillatoryBudget OscillatoryBudget::refined() const {
  OscillatoryBudget b = *this;
  b.kl_points = kl_points * 2;
  b.kl_ratio = std::sqrt(kl_ratio);
  b.periods_per_panel = periods_per_panel / 2.0;
  return b;
}

cplx inner_integral_at(const PhaseFamily& fam, double t, const OscillatoryBudget& budget) {
  require(std::isfinite(t) && std::abs(t) <= 1e6, "inner_integral: need |t| <= 1e6");
  const double lo = fam.support_lo(), hi = fam.support_hi();
  if (!(hi > lo)) return {0.0, 0.0};
  std::vector<double> br{lo, hi};
  for (double knot : fam.cutoff.knots())
    for (double s : {0.0, fam.k, fam.l, fam.k + fam.l}) {
      double b = knot - s;
      if (b > lo && b < hi) br.push_back(b);
    }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  const QuadRule& r = gauss_legendre(budget.inner_points);
  const double p = fam.p.value();
  ComplexCompensatedSum acc;
  std::size_t panels_used = 0;
  for (std::size_t s = 0; s + 1 < br.size(); ++s) {
    const double a = br[s], b = br[s + 1];
    double dmax = 0.0;
    for (int q = 0; q <= 8; ++q) {
      double y = a + (b - a) * q / 8.0;
      y = std::clamp(y, lo, hi);
      dmax = std::max(dmax, std::abs(phase_eval(fam, y).derivative));
    }
    dmax *= 1.25;  // sampled maximum, padded
    double periods = std::abs(t) * dmax * (b - a) / (2.0 * kPi);
    auto panels = static_cast<std::size_t>(std::ceil(periods / budget.periods_per_panel));
    panels = std::max<std::size_t>(panels, 1);
    panels_used += panels;
    if (panels_used > budget.max_panels)
      fail(ErrorCode::budget_exceeded, "inner_integral: refinement budget exceeded");
    const double len = (b - a) / static_cast<double>(panels);
    for (std::size_t k = 0; k < panels; ++k) {
      const double mid = a + (k + 0.5) * len;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double y = mid + 0.5 * len * r.nodes[i];
        double amp = fam.amplitude(y);
        if (amp == 0.0) continue;
        double psi = std::pow(y, p) + std::pow(y + fam.k + fam.l, p) - std::pow(y + fam.k, p) -
                     std::pow(y + fam.l, p);
        acc.add(0.5 * len * r.weights[i] * amp * std::polar(1.0, t * psi));
      }
    }
  }
  return acc.get();
}

InnerIntegral inner_integral(const PhaseFamily& fam, double t, const OscillatoryBudget& budget) {
  cplx coarse = inner_integral_at(fam, t, budget);
  cplx fine = inner_integral_at(fam, t, budget.refined());
  return {fine, std::abs(fine - coarse)};
}

double inner_mass(const PhaseFamily& fam) { return inner_integral_at(fam, 0.0).real(); }

namespace {

// Gauss-Legendre nodes on [0, 1/2], panels graded geometrically toward 0 down
// to k_min and one plain panel on [0, k_min].
void kl_nodes(double k_min, const OscillatoryBudget& b, std::vector<double>& x,
              std::vector<double>& w) {
  const QuadRule& r = gauss_legendre(b.kl_points);
  std::vector<double> edges{0.0};
  std::vector<double> upper;
  for (double e = 0.5; e > k_min; e /= b.kl_ratio) upper.push_back(e);
  std::reverse(upper.begin(), upper.end());
  if (upper.empty() || upper.front() > k_min * 1.0000001) edges.push_back(std::min(k_min, 0.5));
  for (double e : upper)
    if (e > edges.back()) edges.push_back(e);
  if (edges.back() < 0.5) edges.push_back(0.5);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double a = edges[i], c = edges[i + 1];
    for (std::size_t q = 0; q < r.nodes.size(); ++q) {
      x.push_back(0.5 * (a + c) + 0.5 * (c - a) * r.nodes[q]);
      w.push_back(0.5 * (c - a) * r.weights[q]);
    }
  }
}

}  // namespace

double i_of_t(const LpExponent& p, double t, const OscillatoryBudget& budget) {
  require(std::isfinite(t) && std::abs(t) <= 1e6, "i_of_t: need |t| <= 1e6");
  // |I_{k,l}|^2 is even in k and in l and symmetric under k <-> l, so the
  // square [-1/2, 1/2]^2 folds onto 4 x [0, 1/2]^2 with pairs i <= j.
  const double k_min = 1e-3 / std::max(1.0, std::abs(t));
  std::vector<double> x, w;
  kl_nodes(k_min, budget, x, w);
  const std::size_t n = x.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  auto parts = map_chunks<CompensatedSum>(pairs.size(), [&](std::size_t b, std::size_t e) {
    CompensatedSum acc;
    for (std::size_t q = b; q < e; ++q) {
      auto [i, j] = pairs[q];
      PhaseFamily fam{p, x[i], x[j], phi_plus()};
      double v = std::norm(inner_integral_at(fam, t, budget));
      acc.add((i == j ? 1.0 : 2.0) * w[i] * w[j] * v);
    }
    return acc;
  });
  CompensatedSum total;
  for (const auto& c : parts) total.add(c);
  return 4.0 * total.get();
}

DecayFit decay_fit(const LpExponent& p, double t_lo, double t_hi, int count,
                   const OscillatoryBudget& budget, bool check_refinement) {
  require(count >= 6, "decay_fit: need at least 6 samples");
  require(t_lo >= 10.0 * (1.0 - 1e-12) && t_hi <= 1e5 * (1.0 + 1e-12) && t_hi >= 100.0 * t_lo * (1.0 - 1e-12),
          "decay_fit: samples must span two decades inside [10, 1e5]");
  DecayFit fit;
  fit.r_theory = p.r();
  std::vector<double> lx, ly;
  double noise_floor = 1e-12;
  bool above_floor = false;
  for (int i = 0; i < count; ++i) {
    double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (count - 1));
    double v = std::abs(i_of_t(p, t, budget));
    if (check_refinement) {
      double v2 = std::abs(i_of_t(p, t, budget.refined()));
      fit.self_consistency = std::max(fit.self_consistency, std::abs(v2 - v) / std::max(v2, 1e-300));
    }
    fit.t_samples.push_back(t);
    fit.values.push_back(v);
    above_floor = above_floor || v > noise_floor;
    lx.push_back(std::log(t));
    ly.push_back(std::log(std::max(v, 1e-300)));
  }
  if (!above_floor)
    fail(ErrorCode::quadrature_failure, "decay_fit: every sample is below the noise floor");
  fit.slope = least_squares(lx, ly).slope;
  fit.c_fit = fit.values[0] * std::pow(fit.t_samples[0], 1.0 / fit.r_theory);
  fit.envelope_holds = true;
  for (std::size_t i = 0; i < fit.values.size(); ++i)
    if (fit.values[i] > fit.c_fit * std::pow(fit.t_samples[i], -1.0 / fit.r_theory) * (1.0 + 1e-9))
      fit.envelope_holds = false;
  return fit;
}

void write_decay_csv(const DecayFit& fit, std::ostream& out) {
  out << "t,abs_I,envelope\n";
  char buf[96];
  for (std::size_t i = 0; i < fit.t_samples.size(); ++i) {
    double env = fit.c_fit * std::pow(fit.t_samples[i], -1.0 / fit.r_theory);
    std::snprintf(buf, sizeof buf, "%.17e,%.17e,%.17e\n", fit.t_samples[i], fit.values[i], env);
    out << buf;
  }
}

StationaryBound stationary_lower_bound_check(const LpExponent& p, std::span<const double> etas,
                                             int k_points, int y_points) {
  require(!etas.empty(), "stationary_lower_bound_check: no eta values");
  require(k_points >= 2 && y_points >= 2, "stationary_lower_bound_check: grid too small");
  const SplineBump cut = phi_plus();
  StationaryBound out;
  out.degenerate = p.is_two();
  std::vector<double> lx, ly;
  for (double eta : etas) {
    require(eta > 0.0 && eta < 0.5, "stationary_lower_bound_check: eta must lie in (0, 0.5)");
    // |k|, |l| on a geometric grid over [eta, 1/2], both signs
    std::vector<double> ks;
    for (int i = 0; i < k_points; ++i) {
      double v = eta * std::pow(0.5 / eta, static_cast<double>(i) / (k_points - 1));
      ks.push_back(v);
      ks.push_back(-v);
    }
    const double y_lo = eta, y_hi = cut.outer_hi;
    auto mins = map_chunks<double>(ks.size(), [&](std::size_t b, std::size_t e) {
      double best = INFINITY;
      for (std::size_t a = b; a < e; ++a)
        for (double l : ks) {
          double k = ks[a];
          double lo = std::max({y_lo, y_lo - k, y_lo - l, y_lo - k - l});
          double hi = std::min({y_hi, y_hi - k, y_hi - l, y_hi - k - l});
          if (!(hi >= lo)) continue;
          PhaseFamily fam{p, k, l, SplineBump{y_lo, y_lo, y_hi, y_hi}};
          for (int q = 0; q < y_points; ++q) {
            double y = std::clamp(lo + (hi - lo) * q / (y_points - 1), lo, hi);
            best = std::min(best, std::abs(phase_eval(fam, y).derivative));
          }
        }
      return best;
    });
    double best = *std::min_element(mins.begin(), mins.end());
    if (!std::isfinite(best))
      fail(ErrorCode::invalid_argument, "stationary_lower_bound_check: empty admissible region");
    out.etas.push_back(eta);
    out.minima.push_back(best);
    if (best > 0.0) {
      lx.push_back(std::log(eta));
      ly.push_back(std::log(best));
    }
  }
  if (lx.size() >= 2 && !out.degenerate) out.fitted_exponent = least_squares(lx, ly).slope;
  return out;
}

LacunarySums lacunary_sum_bound(std::span<const double> mu, int k) {
  require(!mu.empty(), "lacunary_sum_bound: empty sequence");
  require(k >= 1, "lacunary_sum_bound: k must be >= 1");
  for (std::size_t j = 0; j < mu.size(); ++j) {
    require(mu[j] > 0.0 && std::isfinite(mu[j]), "lacunary_sum_bound: entries must be positive");
    if (j + 1 < mu.size())
      require(mu[j + 1] >= 2.0 * mu[j], "lacunary_sum_bound: sequence is not lacunary");
  }
  LacunarySums out;
  CompensatedSum a, b;
  for (double m : mu) {
    a.add(std::min(m, 1.0 / m));
    b.add(std::pow(m, k) * std::pow(1.0 + m, -k - 1.0));
  }
  out.min_sum = a.get();
  out.weighted_sum = b.get();
  out.holds = out.min_sum <= out.bound && out.weighted_sum <= out.bound;
  return out;
}

double gamma_prime_distance(double xi1, double xi2, double xi3) {
  // rows a1 = (-1, 1, -1), a2 = (1, 0, 2); A A^T = [[3, -3], [-3, 5]],
  // inverse (1/6) [[5, 3], [3, 3]].
  double eta = -xi1 + xi2 - xi3;
  double zeta = xi1 + 2.0 * xi3;
  double q = (5.0 * eta * eta + 6.0 * eta * zeta + 3.0 * zeta * zeta) / 6.0;
  return std::sqrt(std::max(0.0, q));
}

namespace {

double max_lambda(std::span<const double> lambdas) {
  require(!lambdas.empty(), "multiplier: no radii");
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    require(lambdas[j] > 0.0, "multiplier: radii must be positive");
    if (j + 1 < lambdas.size())
      require(lambdas[j + 1] >= 2.0 * lambdas[j], "multiplier: radii must be lacunary");
  }
  require(lambdas.size() <= 12, "multiplier: J must be <= 12");
  return lambdas.back();
}

}  // namespace

MultiplierEvaluator::MultiplierEvaluator(const LpExponent& p, std::span<const double> lambdas,
                                         double epsilon, const MollifierPair& m,
                                         double max_abs_xi)
    : lambdas_(lambdas.begin(), lambdas.end()),
      max_abs_xi_(max_abs_xi),
      khat_(p, epsilon, m, max_lambda(lambdas) * 3.0 * max_abs_xi * 1.05) {
  require(max_abs_xi > 0.0, "multiplier: max_abs_xi must be > 0");
}

double MultiplierEvaluator::value(double xi1, double xi2, double xi3) const {
  double lim = max_abs_xi_ * 1.05 / 1.0;
  require(std::abs(xi1) <= lim && std::abs(xi2) <= lim && std::abs(xi3) <= lim,
          "multiplier: xi outside the tabulated range");
  double eta = -xi1 + xi2 - xi3;
  double zeta = xi1 + 2.0 * xi3;
  CompensatedSum s;
  for (double lam : lambdas_) s.add(khat_(lam * eta) * khat_(lam * zeta));
  return s.get();
}

MultiplierAudit MultiplierEvaluator::audit(double xi1, double xi2, double xi3,
                                           bool with_gradient) const {
  MultiplierAudit a;
  a.eta = -xi1 + xi2 - xi3;
  a.zeta = xi1 + 2.0 * xi3;
  a.m = value(xi1, xi2, xi3);
  a.dist = gamma_prime_distance(xi1, xi2, xi3);
  if (!with_gradient) return a;
  require(a.dist >= 1e-6, "multiplier: xi lies on Gamma' (distance below 1e-6)");
  const double h = a.dist / 100.0;
  double g1 = (value(xi1 + h, xi2, xi3) - value(xi1 - h, xi2, xi3)) / (2.0 * h);
  double g2 = (value(xi1, xi2 + h, xi3) - value(xi1, xi2 - h, xi3)) / (2.0 * h);
  double g3 = (value(xi1, xi2, xi3 + h) - value(xi1, xi2, xi3 - h)) / (2.0 * h);
  a.grad = std::sqrt(g1 * g1 + g2 * g2 + g3 * g3);
  a.gradient_checked = true;
  return a;
}

MultiplierAudit multiplier_check(double xi1, double xi2, double xi3, const LpExponent& p,
                                 std::span<const double> lambdas, double epsilon,
                                 const MollifierPair& m) {
  double mx = std::max({std::abs(xi1), std::abs(xi2), std::abs(xi3), 1e-3});
  MultiplierEvaluator ev(p, lambdas, epsilon, m, mx * 1.02);
  bool grad = gamma_prime_distance(xi1, xi2, xi3) >= 1e-6;
  return ev.audit(xi1, xi2, xi3, grad);
}

}  // namespace lproth
