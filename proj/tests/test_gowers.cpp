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
#include "lproth/core/gowers.hpp"

using namespace lproth;

namespace {

CyclicGridFunction random_function(int M, int d, Rng& r) {
  auto F = CyclicGridFunction::zeros(M, d);
  for (auto& v : F.values) v = {r.uniform(-1, 1), r.uniform(-1, 1)};
  return F;
}

// Definitional U^3 sum on Z_M (d = 1), written independently of the library.
cplx u3_definition_1d(const CyclicGridFunction& F) {
  const int M = F.M;
  auto at = [&](long i) { return F.values[static_cast<std::size_t>(((i % M) + M) % M)]; };
  cplx total = 0.0;
  for (long x = 0; x < M; ++x)
    for (long a = 0; a < M; ++a)
      for (long b = 0; b < M; ++b)
        for (long c = 0; c < M; ++c) {
          cplx t = at(x) * std::conj(at(x + a)) * std::conj(at(x + b)) * std::conj(at(x + c)) *
                   at(x + a + b) * at(x + a + c) * at(x + b + c) *
                   std::conj(at(x + a + b + c));
          total += t;
        }
  return total;
}

double u2_definition_1d(const CyclicGridFunction& F) {
  const int M = F.M;
  auto at = [&](long i) { return F.values[static_cast<std::size_t>(((i % M) + M) % M)]; };
  cplx total = 0.0;
  for (long x = 0; x < M; ++x)
    for (long a = 0; a < M; ++a)
      for (long b = 0; b < M; ++b)
        total += at(x) * std::conj(at(x + a)) * std::conj(at(x + b)) * at(x + a + b);
  return total.real();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("U3 brute force and recursion match the definition on Z_M") {
  Rng r(1);
  for (int M : {5, 8, 12}) {
    auto F = random_function(M, 1, r);
    double def = u3_definition_1d(F).real();
    CHECK(rel(u3_sum_brute(F).real(), def) < 1e-12);
    CHECK(rel(u3_sum_recursive(F).real(), def) < 1e-10);
    CHECK(std::abs(u3_sum_recursive(F).imag()) < 1e-9 * def);
  }
}

TEST_CASE("U2 sums match the definition and the spectral form") {
  Rng r(2);
  for (int M : {7, 16, 64}) {
    auto F = random_function(M, 1, r);
    double def = u2_definition_1d(F);
    CHECK(rel(u2_sum_brute(F), def) < 1e-12);
    CHECK(rel(u2_sum_spectral(F), def) < 1e-10);
  }
  auto G = random_function(6, 2, r);
  CHECK(rel(u2_sum_spectral(G), u2_sum_brute(G)) < 1e-10);
}

TEST_CASE("U3 on Z_M^2: recursion against brute force") {
  Rng r(3);
  for (int i = 0; i < 3; ++i) {
    auto F = random_function(6, 2, r);
    CHECK(rel(u3_sum_recursive(F).real(), u3_sum_brute(F).real()) < 1e-10);
  }
}

TEST_CASE("constants and tensor products") {
  auto C = CyclicGridFunction::zeros(8, 1);
  for (auto& v : C.values) v = cplx(0.0, 0.5);
  CHECK(u3_sum_recursive(C).real() == doctest::Approx(std::pow(0.5, 8) * std::pow(8.0, 4)));
  CHECK(u2_sum_spectral(C) == doctest::Approx(std::pow(0.5, 4) * std::pow(8.0, 3)));

  // F (x) G on Z_M^2: sums factor.
  Rng r(4);
  auto F = random_function(6, 1, r), G = random_function(6, 1, r);
  auto T = CyclicGridFunction::zeros(6, 2);
  for (long i = 0; i < 6; ++i)
    for (long j = 0; j < 6; ++j) {
      long idx[2] = {i, j};
      T.values[T.flat(idx)] = F.values[static_cast<std::size_t>(i)] * G.values[static_cast<std::size_t>(j)];
    }
  CHECK(rel(u3_sum_recursive(T).real(),
            u3_sum_recursive(F).real() * u3_sum_recursive(G).real()) < 1e-10);
  CHECK(rel(u2_sum_spectral(T), u2_sum_spectral(F) * u2_sum_spectral(G)) < 1e-10);
}

TEST_CASE("invariances: shifts, linear phases for U2, quadratic phases for U3") {
  Rng r(5);
  const int M = 12;
  auto F = random_function(M, 1, r);
  auto S = F, L = F, Q = F;
  for (int x = 0; x < M; ++x) {
    S.values[static_cast<std::size_t>(x)] = F.values[static_cast<std::size_t>((x + 5) % M)];
    L.values[static_cast<std::size_t>(x)] *= std::polar(1.0, 2.0 * kPi * 3.0 * x / M);
    Q.values[static_cast<std::size_t>(x)] *= std::polar(1.0, 2.0 * kPi * 5.0 * x * x / M);
  }
  double u3 = u3_sum_recursive(F).real(), u2 = u2_sum_spectral(F);
  CHECK(rel(u3_sum_recursive(S).real(), u3) < 1e-10);
  CHECK(rel(u2_sum_spectral(S), u2) < 1e-10);
  CHECK(rel(u2_sum_spectral(L), u2) < 1e-10);
  CHECK(rel(u3_sum_recursive(L).real(), u3) < 1e-10);
  CHECK(rel(u3_sum_recursive(Q).real(), u3) < 1e-10);
  // A quadratic phase is not U2-invariant in general.
  CHECK(rel(u2_sum_spectral(Q), u2) > 1e-3);
}

TEST_CASE("normalized U2 is dominated by normalized U3") {
  Rng r(6);
  for (int i = 0; i < 20; ++i) {
    auto F = random_function(10, 1, r);
    double a2 = std::pow(u2_sum_spectral(F) / std::pow(10.0, 3), 0.25);
    double a3 = std::pow(u3_sum_recursive(F).real() / std::pow(10.0, 4), 0.125);
    CHECK(a2 <= a3 * (1.0 + 1e-12));
  }
}

TEST_CASE("delta_h and the U3 = sum_h U2 recursion") {
  Rng r(7);
  auto F = random_function(9, 1, r);
  double total = 0.0;
  for (long h = 0; h < 9; ++h) {
    long hh[1] = {h};
    auto D = delta_h(F, hh);
    long x0[1] = {4};
    long xh[1] = {4 + h};
    CHECK(std::abs(D.values[D.flat(x0)] - F.values[F.flat(xh)] * std::conj(F.values[F.flat(x0)])) <
          1e-15);
    total += u2_sum_brute(D);
  }
  CHECK(rel(total, u3_sum_brute(F).real()) < 1e-12);
}

TEST_CASE("continuum normalization carries the cell factors") {
  Rng r(8);
  auto F = random_function(8, 1, r);
  auto G = F;
  G.cell = 0.5;
  CHECK(u2_norm(G) == doctest::Approx(u2_norm(F) * std::pow(0.5, 0.75)).epsilon(1e-12));
  CHECK(u3_norm(G) == doctest::Approx(u3_norm(F) * std::pow(0.5, 0.5)).epsilon(1e-12));
  CHECK(u3_norm(F, U3Path::brute_force) == doctest::Approx(u3_norm(F)).epsilon(1e-10));
}

TEST_CASE("tensorization check is exact on the grid") {
  for (auto [pv, t] : {std::pair{1.5, 2.0}, std::pair{3.0, 5.0}}) {
    auto tc = u3_tensor_check(LpExponent(pv), t, 2, 32);
    CHECK(tc.relative_gap < 1e-10);
    CHECK(tc.lhs == doctest::Approx(tc.rhs).epsilon(1e-10));
  }
  auto coarse = u3_tensor_check(LpExponent(3.0), 50.0, 2, 16);
  CHECK(coarse.undersampled);
  CHECK_THROWS_AS(u3_tensor_check(LpExponent(3.0), 50.0, 2, 16, true), Error);
}

TEST_CASE("kernel difference grid vanishes when eta equals eps") {
  const auto m = MollifierPair::build();
  auto g = kernel_grid(LpExponent(1.5), 1.0, 1, 128);
  auto F = kernel_difference_grid(LpExponent(1.5), 1.0, 0.1, 0.1, g, m);
  double mx = 0.0;
  for (auto v : F.values) mx = std::max(mx, std::abs(v));
  CHECK(mx == 0.0);
  auto G = kernel_difference_grid(LpExponent(1.5), 1.0, 0.05, 0.1, g, m);
  // chi_+ keeps only y >= 0: index i > M/2 stands for negative y.
  for (int i = 65; i < 128; ++i) CHECK(G.values[static_cast<std::size_t>(i)] == cplx(0.0));
}

TEST_CASE("form control: uniform g gives a small ratio, argument checks") {
  Rng r(9);
  const double N = 32.0, h = 0.25;
  BoxFunction f(1, N, h);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = r.uniform(-1, 1);
  auto g = CyclicGridFunction::zeros(256, 1, h);
  for (auto& v : g.values) v = r.uniform(-1, 1);
  auto fc = u3_form_control_check(f, g, 4.0);
  CHECK(fc.ratio >= 0.0);
  CHECK(fc.ratio < 1.0);
  CHECK(fc.ratio == doctest::Approx(std::abs(fc.T) / fc.bound));
  auto bad = CyclicGridFunction::zeros(256, 1, 0.5);
  CHECK_THROWS_AS(u3_form_control_check(f, bad, 4.0), Error);
}
