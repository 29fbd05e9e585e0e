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

#include <cmath>

#include "lproth/core/error.hpp"
#include "lproth/core/forms.hpp"

using namespace lproth;

namespace {

const MollifierPair& pair() {
  static const MollifierPair m = MollifierPair::build();
  return m;
}

BoxFunction random_box(int d, double N, double h, Rng& r, bool indicator = false) {
  BoxFunction f(d, N, h);
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = indicator ? (r.bernoulli(0.4) ? 1.0 : 0.0) : r.uniform(-1, 1);
  return f;
}

// T(j) by direct loops over cell indices.
double t_oracle(const BoxFunction& f, long j0, long j1) {
  const long n = f.n();
  auto val = [&](long a, long b) -> double {
    if (a < 0 || a >= n || b < 0 || b >= n) return 0.0;
    return f[static_cast<std::size_t>(a + (f.d() == 2 ? b * n : 0))];
  };
  double s = 0.0;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < (f.d() == 2 ? n : 1); ++b)
      s += val(a, b) * val(a + j0, b + j1) * val(a + 2 * j0, b + 2 * j1);
  return s;
}

// M_lambda(f) = h^{2d} sum_j T(j) omega(j h), summed here by brute force.
double m_lambda_oracle(const BoxFunction& f, const LpExponent& p, double lambda, double eps) {
  KernelParams kp{p, f.d(), lambda, eps};
  const long R = static_cast<long>(std::ceil(kernel_support_radius(p, lambda) / f.h())) + 1;
  double s = 0.0;
  for (long a = -R; a <= R; ++a)
    for (long b = (f.d() == 2 ? -R : 0); b <= (f.d() == 2 ? R : 0); ++b) {
      double y[2] = {a * f.h(), b * f.h()};
      double w = omega_eps_eval(std::span<const double>(y, static_cast<std::size_t>(f.d())), kp, pair());
      if (w != 0.0) s += t_oracle(f, a, b) * w;
    }
  return s * std::pow(f.h(), 2 * f.d());
}

// Largest dyadic spacing that resolves the eps-shell: h <= eps lambda / (8 p).
double resolving_h(double lambda, double eps, double pv) {
  double h = 1.0;
  while (h > eps * lambda / (8.0 * pv)) h /= 2.0;
  return h;
}

}  // namespace

TEST_CASE("box function basics") {
  auto f = BoxFunction::constant(2, 4.0, 0.5, 0.25);
  CHECK(f.n() == 8);
  CHECK(f.size() == 64);
  CHECK(f.integral() == doctest::Approx(0.25 * 16.0));
  CHECK(f.mean() == doctest::Approx(0.25));
  CHECK(f.l4_power() == doctest::Approx(std::pow(0.25, 4) * 16.0));
  CHECK(f.is_constant());
  CHECK_THROWS_AS(BoxFunction(1, 4.0, 0.3), Error);
  CHECK_THROWS_AS(BoxFunction(4, 4.0, 0.5), Error);
  f[3] = 1.5;
  CHECK_THROWS_AS(f.validate("t"), Error);
}

TEST_CASE("interpolation reproduces node values and linear data") {
  BoxFunction f(2, 4.0, 0.5);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto c = f.cell_centre(i);
    f[i] = 0.1 * c[0] - 0.2 * c[1];
  }
  Rng r(3);
  for (int i = 0; i < 50; ++i) {
    double x[2] = {r.uniform(0.25, 3.75), r.uniform(0.25, 3.75)};
    CHECK(f.eval(x) == doctest::Approx(0.1 * x[0] - 0.2 * x[1]).epsilon(1e-12));
  }
  double out[2] = {-0.1, 1.0};
  CHECK(f.eval(out) == 0.0);
}

TEST_CASE("correlation table against direct loops") {
  Rng r(4);
  for (int d : {1, 2}) {
    auto f = random_box(d, 6.0, 0.5, r);
    auto t = correlation_table(f, 4);
    for (long a = -4; a <= 4; ++a)
      for (long b = (d == 2 ? -4 : 0); b <= (d == 2 ? 4 : 0); ++b) {
        long j[2] = {a, b};
        CHECK(t.at(std::span<const long>(j, static_cast<std::size_t>(d))) ==
              doctest::Approx(t_oracle(f, a, b)).epsilon(1e-12).scale(1e-12));
      }
  }
}

TEST_CASE("M_lambda and M^eps_lambda against brute-force lattice sums") {
  Rng r(5);
  const LpExponent p(1.5);
  auto f1 = random_box(1, 16.0, resolving_h(3.0, 0.2, 1.5), r);
  CHECK(m_lambda(f1, p, 3.0, pair()).value ==
        doctest::Approx(m_lambda_oracle(f1, p, 3.0, 1.0)).epsilon(1e-11));
  CHECK(m_eps_lambda(f1, p, 3.0, 0.2, pair()).value ==
        doctest::Approx(m_lambda_oracle(f1, p, 3.0, 0.2)).epsilon(1e-11));
  auto f2 = random_box(2, 8.0, 0.25, r);
  CHECK(m_lambda(f2, p, 1.5, pair()).value ==
        doctest::Approx(m_lambda_oracle(f2, p, 1.5, 1.0)).epsilon(1e-11));
}

TEST_CASE("decomposition M^eps = c1 M + E on random inputs") {
  Rng r(6);
  for (int trial = 0; trial < 6; ++trial) {
    int d = 1 + trial % 2;
    double pv = trial < 3 ? 1.5 : 3.0;
    double N = d == 1 ? 32.0 : 8.0, lambda = d == 1 ? 4.0 : 2.0, eps = d == 1 ? 0.25 : 0.5;
    double h = resolving_h(lambda, eps, pv);
    auto f = random_box(d, N, h, r, trial % 3 == 0);
    auto tr = form_triple(f, LpExponent(pv), lambda, eps, pair());
    CHECK(std::abs(tr.decomposition_residual) <= 1e-10);
    // Separate passes agree with the shared table.
    auto e = e_lambda(f, LpExponent(pv), lambda, eps, pair());
    CHECK(e.value == doctest::Approx(tr.e.value).epsilon(1e-10).scale(1e-10));
    CHECK(tr.c1 == doctest::Approx(c1_eps(eps, LpExponent(pv), d, pair())));
  }
}

TEST_CASE("forms are cubic and invariant under reflection of the box") {
  Rng r(7);
  auto f = random_box(1, 16.0, 0.125, r);
  BoxFunction g(1, 16.0, 0.125), flip(1, 16.0, 0.125);
  for (std::size_t i = 0; i < f.size(); ++i) {
    g[i] = 0.5 * f[i];
    flip[i] = f[f.size() - 1 - i];
  }
  const LpExponent p(3.0);
  double m = m_lambda(f, p, 2.0, pair()).value;
  CHECK(m_lambda(g, p, 2.0, pair()).value == doctest::Approx(0.125 * m).epsilon(1e-12));
  CHECK(m_lambda(flip, p, 2.0, pair()).value == doctest::Approx(m).epsilon(1e-12));
}

TEST_CASE("N_lambda in d = 1: two sphere points of weight 1/p") {
  const double N = 16.0, h = 0.25, lambda = 3.0;
  auto f = BoxFunction::constant(1, N, h, 1.0);
  for (double pv : {1.5, 3.0}) {
    auto q = sphere_quadrature(LpExponent(pv), 1, lambda, 8, QuadratureMode::deterministic_graph);
    // Count cell centres x with x, x + y, x + 2y in [0, N] for y = +-lambda.
    double count = 0.0;
    for (int i = 0; i < f.n(); ++i) {
      double x = (i + 0.5) * h;
      for (double y : {lambda, -lambda})
        if (x + 2 * y >= 0 && x + 2 * y <= N && x + y >= 0 && x + y <= N) count += 1.0;
    }
    CHECK(n_lambda(f, lambda, q).value == doctest::Approx(h * count / pv).epsilon(1e-12));
  }
}

TEST_CASE("N_lambda for a non-constant f matches a quadrature oracle") {
  // f(x) = x / N on [0, N]: the centres reproduce it exactly under interpolation.
  const double N = 16.0, h = 0.25, lambda = 2.0;
  BoxFunction f(1, N, h);
  for (int i = 0; i < f.n(); ++i) f[static_cast<std::size_t>(i)] = (i + 0.5) * h / N;
  auto q = sphere_quadrature(LpExponent(2.0), 1, lambda, 8, QuadratureMode::deterministic_graph);
  double expect = 0.0;
  for (double y : {lambda, -lambda}) {
    for (int i = 0; i < f.n(); ++i) {
      double x = (i + 0.5) * h;
      double xs[3] = {x, x + y, x + 2 * y};
      double prod = 1.0;
      for (double v : xs) {
        double a[1] = {v};
        prod *= f.eval(a);
      }
      expect += h * prod * 0.5;
    }
  }
  CHECK(n_lambda(f, lambda, q).value == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("energy sum bookkeeping") {
  Rng r(8);
  auto f = random_box(1, 64.0, resolving_h(1.5, 0.25, 1.5), r);
  const double lam[] = {1.5, 3.0, 6.0};
  auto rep = energy_sum(f, LpExponent(1.5), lam, 0.25, pair());
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    double e = e_lambda(f, LpExponent(1.5), lam[j], 0.25, pair()).value;
    CHECK(rep.energies[static_cast<std::size_t>(j)] == doctest::Approx(e * e).epsilon(1e-12));
    total += e * e;
  }
  CHECK(rep.total == doctest::Approx(total));
  CHECK(rep.ratio == doctest::Approx(total / (64.0 * f.l4_power())));
  const double bad[] = {1.5, 2.0};
  CHECK_THROWS_AS(energy_sum(f, LpExponent(1.5), bad, 0.25, pair()), Error);
}

TEST_CASE("pigeonhole lemma on random indicators, counted independently") {
  Rng r(9);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 1 + trial % 2;
    double N = 16.0, h = 0.5, ell = 2.0;
    BoxFunction f(d, N, h);
    double dens = r.uniform(0.05, 0.9);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = r.bernoulli(dens) ? 1.0 : 0.0;
    auto res = box_partition_pigeonhole(f, ell);
    // Oracle: box counts c_b, qualifying when c_b / cells_per_box >= delta / 2.
    const int n = f.n(), per = 8, cpb = 4;  // boxes per axis, cells per box side
    std::vector<long> counts(static_cast<std::size_t>(d == 1 ? per : per * per), 0);
    long S = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      long a = static_cast<long>(i) % n, b = static_cast<long>(i) / n;
      std::size_t box = static_cast<std::size_t>(a / cpb + (d == 2 ? (b / cpb) * per : 0));
      long v = static_cast<long>(f[i]);
      counts[box] += v;
      S += v;
    }
    const long L = static_cast<long>(counts.size());
    const long cells = static_cast<long>(f.size());
    long I = 0;
    for (long c : counts)
      if (2 * c * L >= S) ++I;
    CHECK(res.boxes == static_cast<std::uint64_t>(L));
    CHECK(res.qualifying == static_cast<std::uint64_t>(I));
    CHECK(res.delta == doctest::Approx(static_cast<double>(S) / cells));
    CHECK(res.certificate == (2 * I * cells >= S * L));
    CHECK(res.certificate);
  }
  BoxFunction f(1, 16.0, 0.5);
  CHECK_THROWS_AS(box_partition_pigeonhole(f, 3.0), Error);
}

TEST_CASE("main term stays positive for dense random sets") {
  auto rep = roth_main_term_experiment(0.4, LpExponent(1.5), 1, 64.0, 4.0, 6, pair(), 11);
  CHECK(rep.all_positive);
  CHECK(rep.normalized.size() == 6);
  CHECK(rep.min_normalized > 0.0);
}

TEST_CASE("form arguments are validated") {
  auto f = BoxFunction::constant(1, 16.0, 0.25, 1.0);
  CHECK_THROWS_AS(m_lambda(f, LpExponent(1.5), -1.0, pair()), Error);
  auto q = sphere_quadrature(LpExponent(2.0), 1, 2.0, 8, QuadratureMode::deterministic_graph);
  CHECK_THROWS_AS(n_lambda(f, 3.0, q), Error);
}
