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

#include "lproth/core/kernels.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lproth/core/error.hpp"

namespace lproth {

namespace {

constexpr double kG0 = 16.0 / 15.0;  // g(0) = int (1 - t^2)^2 dt

double bump_b(double t) {
  double s = 1.0 - t * t;
  return s <= 0.0 ? 0.0 : s * s;
}

// (b * b)(u); on the overlap the integrand is a degree-8 polynomial, so the
// 5-point Gauss-Legendre rule is exact.
double b_conv_b(double u) {
  u = std::abs(u);
  if (u >= 2.0) return 0.0;
  const QuadRule& r = gauss_legendre(5);
  double lo = u - 1.0, hi = 1.0;
  double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    double t = mid + half * r.nodes[i];
    acc += r.weights[i] * bump_b(t) * bump_b(u - t);
  }
  return half * acc;
}

// g(x) = int_{-1}^{1} (1 - t^2)^2 cos(xt) dt
double g_transform(double x) {
  double ax = std::abs(x);
  if (ax < 2.0) {
    const QuadRule& r = gauss_legendre(24);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      acc += r.weights[i] * bump_b(r.nodes[i]) * std::cos(x * r.nodes[i]);
    return acc;
  }
  double s = std::sin(ax), c = std::cos(ax);
  double x2 = ax * ax;
  return 16.0 * (3.0 * s - 3.0 * ax * c - x2 * s) / (x2 * x2 * ax);
}

struct NodeList {
  std::vector<double> x;
  std::vector<double> w;
};

void append_panels(NodeList& out, double a, double b, double max_len, unsigned n) {
  if (!(b > a)) return;
  const QuadRule& r = gauss_legendre(n);
  auto panels = static_cast<std::size_t>(std::ceil((b - a) / max_len));
  panels = std::max<std::size_t>(panels, 1);
  double len = (b - a) / static_cast<double>(panels);
  for (std::size_t k = 0; k < panels; ++k) {
    double mid = a + (k + 0.5) * len;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      out.x.push_back(mid + 0.5 * len * r.nodes[i]);
      out.w.push_back(0.5 * len * r.weights[i]);
    }
  }
}

// Geometric grading toward `a`, for integrands behaving like (y - a)^s with
// non-integer s (here |y|^p at the origin).
void append_graded(NodeList& out, double a, double b, double max_len, unsigned n,
                   int levels) {
  double len = b - a;
  double lo = a;
  double hi = a + len * std::ldexp(1.0, -levels);
  append_panels(out, lo, hi, max_len, n);
  for (int k = levels; k >= 1; --k) {
    lo = a + len * std::ldexp(1.0, -k);
    hi = a + len * std::ldexp(1.0, -k + 1);
    append_panels(out, lo, hi, max_len, n);
  }
}

// Breakpoints of the cancelled-kernel profile in u = |y|^p.
std::vector<double> profile_breaks(double eps) {
  std::vector<double> u{0.0, 1.0, 3.0};
  if (eps < 1.0) {
    if (1.0 - 2.0 * eps > 0.0) u.push_back(1.0 - 2.0 * eps);
    u.push_back(1.0 + 2.0 * eps);
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

// Radial nodes on [0, R] (lambda = 1) resolving frequencies up to 2 pi / max_len.
NodeList radial_nodes(const LpExponent& p, double eps, double max_len) {
  auto ub = profile_breaks(eps);
  std::vector<double> yb;
  for (double u : ub) yb.push_back(std::pow(u, 1.0 / p.value()));
  NodeList nodes;
  for (std::size_t i = 0; i + 1 < yb.size(); ++i) {
    if (i == 0)
      append_graded(nodes, yb[0], yb[1], max_len, 16, 26);
    else
      append_panels(nodes, yb[i], yb[i + 1], max_len, 20);
  }
  return nodes;
}

}  // namespace

MollifierPair MollifierPair::build() {
  MollifierPair m;
  m.m_psi_ = m.psi_hat(0.0);
  m.tau_ = 1.0;
  m.c_low_ = m.psi_hat(m.tau_);
  return m;
}

double MollifierPair::psi(double x) const {
  double g = g_transform(x) / kG0;
  return g * g;
}

double MollifierPair::psi_hat(double u) const {
  return 2.0 * kPi * b_conv_b(u) / (kG0 * kG0);
}

double MollifierPair::psi_hat_by_fourier_quadrature(double u) const {
  // psi(s) ~ 225 sin^2(s) / s^6, so truncating at 400 leaves < 1e-11.
  constexpr double kCut = 400.0;
  double panel = 1.0;
  if (std::abs(u) > 0) panel = std::min(1.0, kPi / std::abs(u));
  double half = gl_integrate(
      [&](double s) { return psi(s) * std::cos(s * u); }, 0.0, kCut, 20,
      static_cast<unsigned>(std::ceil(kCut / panel)));
  return 2.0 * half;
}

void MollifierPair::write_profile_csv(std::ostream& out, int samples) const {
  out << "u,psi_hat\n";
  char buf[64];
  for (int i = 0; i < samples; ++i) {
    double u = -2.5 + 5.0 * i / (samples - 1);
    std::snprintf(buf, sizeof buf, "%.17e,%.17e\n", u, psi_hat(u));
    out << buf;
  }
}

void KernelParams::validate() const {
  require(d >= 1, "kernel params: d must be >= 1");
  require(std::isfinite(lambda) && lambda > 0.0, "kernel params: lambda must be > 0");
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= 1.0,
          "kernel params: epsilon must lie in (0, 1]");
}

double kernel_support_radius(const LpExponent& p, double lambda) {
  return lambda * std::pow(3.0, 1.0 / p.value());
}

double omega_eps_profile(double u, double epsilon, const MollifierPair& m) {
  return m.psi_hat((u - 1.0) / epsilon) / epsilon;
}

double omega_eps_eval(std::span<const double> y, const KernelParams& params,
                      const MollifierPair& m) {
  params.validate();
  require(static_cast<int>(y.size()) == params.d, "omega_eps_eval: dimension mismatch");
  double u = 0.0;
  for (double v : y) u += std::pow(std::abs(v / params.lambda), params.p.value());
  return std::pow(params.lambda, -params.d) * omega_eps_profile(u, params.epsilon, m);
}

double omega_eps_oscillatory(std::span<const double> y, const LpExponent& p, double epsilon,
                             const MollifierPair& m) {
  require(epsilon > 0.0 && epsilon <= 1.0, "omega_eps_oscillatory: epsilon in (0, 1]");
  double u = lp_power_sum(y, p);
  // int e^{it(u-1)} psi(eps t) dt = eps^{-1} int cos(s (u-1)/eps) psi(s) ds
  return m.psi_hat_by_fourier_quadrature((u - 1.0) / epsilon) / epsilon;
}

MassResult kernel_total_mass(const KernelParams& params, const MollifierPair& m) {
  params.validate();
  const double pv = params.p.value();
  const double dp = static_cast<double>(params.d) / pv;
  const double eps = params.epsilon;
  // v = u^{d/p} absorbs the u^{d/p-1} weight: mass = nu_p int F(v^{p/d}) dv.
  auto f = [&](double v) { return omega_eps_profile(std::pow(v, 1.0 / dp), eps, m); };
  double lo = std::max(0.0, 1.0 - 2.0 * eps);
  double hi = 1.0 + 2.0 * eps;
  double nu = unit_ball_volume(params.p, params.d);
  if (lo > 0.0) {
    // Away from u = 0 the weight is smooth; integrating in u avoids squeezing
    // a thin shell into a v-interval of width ~ eps d / p when p >> d.
    auto g = [&](double u) { return dp * std::pow(u, dp - 1.0) * omega_eps_profile(u, eps, m); };
    auto res = adaptive_integrate(g, lo, hi, profile_breaks(eps), 1e-11);
    return {nu * res.value, nu * res.error};
  }
  std::vector<double> breaks;
  for (double u : profile_breaks(eps)) breaks.push_back(std::pow(u, dp));
  double a = std::pow(lo, dp);
  IntegralResult head{0.0, 0.0};
  if (lo == 0.0) {
    // F(v^{p/d}) has an algebraic endpoint singularity at v = 0 whenever the
    // profile is nonzero there; tanh-sinh absorbs it.
    a = breaks[1];
    boost::math::quadrature::tanh_sinh<double> ts;
    double l1 = 0.0;
    head.value = ts.integrate(f, 0.0, a, 1e-12, &head.error, &l1);
  }
  auto res = adaptive_integrate(f, a, std::pow(hi, dp), breaks, 1e-11);
  return {nu * (head.value + res.value), nu * (head.error + res.error)};
}

double c1_eps(double epsilon, const LpExponent& p, int d, const MollifierPair& m) {
  require(epsilon > 0.0 && epsilon <= 1.0, "c1_eps: epsilon must lie in (0, 1]");
  KernelParams num{p, d, 1.0, epsilon};
  KernelParams den{p, d, 1.0, 1.0};
  return kernel_total_mass(num, m).value / kernel_total_mass(den, m).value;
}

CancelledKernel::CancelledKernel(const KernelParams& params, const MollifierPair& m)
    : params_(params), m_(&m) {
  params_.validate();
  c1_ = c1_eps(params_.epsilon, params_.p, params_.d, m);
}

double CancelledKernel::profile(double u) const {
  return omega_eps_profile(u, params_.epsilon, *m_) - c1_ * omega_eps_profile(u, 1.0, *m_);
}

double CancelledKernel::operator()(std::span<const double> y) const {
  require(static_cast<int>(y.size()) == params_.d, "cancelled kernel: dimension mismatch");
  double u = 0.0;
  for (double v : y) u += std::pow(std::abs(v / params_.lambda), params_.p.value());
  return std::pow(params_.lambda, -params_.d) * profile(u);
}

std::vector<double> CancelledKernel::radial_breaks() const {
  return profile_breaks(params_.epsilon);
}

double CancelledKernel::fourier_1d(double eta) const {
  // k_lambda_hat(eta) = k_1_hat(lambda eta); k is even so the transform is real.
  double x = params_.lambda * eta;
  double max_len = x == 0.0 ? 1.0 : std::min(1.0, 2.0 * kPi / std::abs(x));
  NodeList nodes = radial_nodes(params_.p, params_.epsilon, max_len);
  CompensatedSum acc;
  const double pv = params_.p.value();
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    double y = nodes.x[i];
    acc.add(nodes.w[i] * profile(std::pow(y, pv)) * std::cos(x * y));
  }
  return 2.0 * acc.get();
}

double CancelledKernel::fourier_2d(double eta1, double eta2) const {
  // Reflection symmetry in each coordinate leaves the cosine-cosine part:
  // khat(eta) = 4 int_{Q+} k(y) cos(y1 eta1) cos(y2 eta2) dy, at lambda = 1 and
  // frequency lambda * eta.
  const double x1 = params_.lambda * eta1;
  const double x2 = params_.lambda * eta2;
  const double pv = params_.p.value();
  const auto ub = radial_breaks();
  const double len2 = x2 == 0.0 ? 1.0 : std::min(1.0, 2.0 * kPi / std::abs(x2));
  auto inner = [&](double y1) {
    double t1 = std::pow(y1, pv);
    std::vector<double> yb{0.0};
    for (double u : ub)
      if (u > t1) yb.push_back(std::pow(u - t1, 1.0 / pv));
    NodeList nodes;
    for (std::size_t i = 0; i + 1 < yb.size(); ++i) {
      if (i == 0)
        append_graded(nodes, yb[0], yb[1], len2, 12, 24);
      else
        append_panels(nodes, yb[i], yb[i + 1], len2, 16);
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
      double y2 = nodes.x[i];
      acc.add(nodes.w[i] * profile(t1 + std::pow(y2, pv)) * std::cos(x2 * y2));
    }
    return acc.get() * std::cos(x1 * y1);
  };
  std::vector<double> breaks;
  for (double u : ub) breaks.push_back(std::pow(u, 1.0 / pv));
  double r = std::pow(3.0, 1.0 / pv);
  if (x1 != 0.0) {
    double period = 2.0 * kPi / std::abs(x1);
    for (double y = period; y < r; y += period) breaks.push_back(y);
  }
  auto res = adaptive_integrate(inner, 0.0, r, breaks, 1e-12, 1e-13, false);
  return 4.0 * res.value;
}

cplx CancelledKernel::fourier(std::span<const double> eta) const {
  require(static_cast<int>(eta.size()) == params_.d, "kernel_fourier: dimension mismatch");
  if (params_.d == 1) return {fourier_1d(eta[0]), 0.0};
  if (params_.d == 2) return {fourier_2d(eta[0], eta[1]), 0.0};
  fail(ErrorCode::unsupported, "kernel_fourier: d > 2 is not supported");
}

double CancelledKernel::cartesian_integral() const {
  if (params_.d == 1) return fourier_1d(0.0);
  if (params_.d == 2) return fourier_2d(0.0, 0.0);
  fail(ErrorCode::unsupported, "cartesian_integral: d > 2 is not supported");
}

KernelTransform1D::KernelTransform1D(const LpExponent& p, double epsilon,
                                     const MollifierPair& m, double max_frequency)
    : max_freq_(max_frequency), base_len_(1.0) {
  require(max_frequency > 0.0, "KernelTransform1D: max_frequency must be > 0");
  CancelledKernel k(KernelParams{p, 1, 1.0, epsilon}, m);
  c1_ = k.c1();
  const double pv = p.value();
  for (int level = 0;; ++level) {
    double max_len = base_len_ * std::ldexp(1.0, -level);
    NodeList nodes = radial_nodes(p, epsilon, max_len);
    Level lv;
    lv.y = nodes.x;
    lv.wk.resize(nodes.x.size());
    for (std::size_t i = 0; i < nodes.x.size(); ++i)
      lv.wk[i] = nodes.w[i] * k.profile(std::pow(nodes.x[i], pv));
    levels_.push_back(std::move(lv));
    if (2.0 * kPi / max_frequency >= max_len) break;
  }
}

double KernelTransform1D::operator()(double x) const {
  double ax = std::abs(x);
  if (ax > max_freq_ * (1.0 + 1e-12))
    fail(ErrorCode::invalid_argument, "KernelTransform1D: frequency beyond prepared range");
  std::size_t level = 0;
  while (level + 1 < levels_.size() &&
         ax > 0.0 && base_len_ * std::ldexp(1.0, -static_cast<int>(level)) > 2.0 * kPi / ax)
    ++level;
  const Level& lv = levels_[level];
  CompensatedSum acc;
  for (std::size_t i = 0; i < lv.y.size(); ++i) acc.add(lv.wk[i] * std::cos(x * lv.y[i]));
  return 2.0 * acc.get();
}

}  // namespace lproth
