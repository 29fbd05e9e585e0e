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
#include <cstdlib>
#include <sstream>

#include "lproth/core/error.hpp"
#include "lproth/core/sets.hpp"

using namespace lproth;

namespace {

// Independent membership: |x|^2 within 1/10 of some n in {0, 1, 2, ...}.
bool bourgain_oracle(double a, double b) {
  double s = a * a + b * b;
  for (int n = 0; n <= static_cast<int>(s) + 1; ++n)
    if (std::abs(s - n) <= 0.1) return true;
  return false;
}

}  // namespace

TEST_CASE("Bourgain membership") {
  double origin[2] = {0.0, 0.0}, unit[2] = {1.0, 0.0}, half[2] = {0.5, 0.5};
  CHECK(bourgain_membership(origin));  // 0 counts as a natural number
  CHECK(bourgain_membership(unit));
  CHECK_FALSE(bourgain_membership(half));
  Rng r(1);
  for (int i = 0; i < 5000; ++i) {
    double x[2] = {r.uniform(-10, 10), r.uniform(-10, 10)};
    CHECK(bourgain_membership(x) == bourgain_oracle(x[0], x[1]));
  }
  auto A = PointSet::bourgain(2);
  CHECK(A.kind() == SetKind::bourgain);
  CHECK(std::string(set_kind_name(A.kind())) == "bourgain");
}

TEST_CASE("lattice cube and grid indicator membership") {
  double a[2] = {3.04, -1.02}, b[2] = {3.2, 1.0};
  CHECK(lattice_cube_membership(a, 0.05));
  CHECK_FALSE(lattice_cube_membership(b, 0.05));
  CHECK_THROWS_AS(PointSet::lattice_cube(2, 0.6), Error);

  BoxFunction f(2, 4.0, 1.0);
  f[1] = 1.0;  // cell [1, 2] x [0, 1]
  auto G = PointSet::grid_indicator(f);
  double in[2] = {1.5, 0.5}, out[2] = {0.5, 0.5}, outside[2] = {5.0, 0.5};
  CHECK(G.contains(in));
  CHECK_FALSE(G.contains(out));
  CHECK_FALSE(G.contains(outside));
  CHECK(G.extent() == 4.0);
  auto F = PointSet::full_box(2, 4.0);
  CHECK(F.contains(out));
  CHECK_FALSE(F.contains(outside));
}

TEST_CASE("parallelogram identity holds for p = 2 and fails for p = 1.5") {
  Rng r(2);
  double worst = 0.0, largest15 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double x[2] = {r.uniform(-5, 5), r.uniform(-5, 5)}, y[2] = {r.uniform(-5, 5), r.uniform(-5, 5)};
    auto c2 = parallelogram_check(x, y, LpExponent(2.0));
    double lhs = 2.0 * (y[0] * y[0] + y[1] * y[1]);
    CHECK(c2.lhs == doctest::Approx(lhs));
    worst = std::max(worst, std::abs(c2.gap) / (1.0 + std::abs(lhs)));
    largest15 = std::max(largest15, std::abs(parallelogram_check(x, y, LpExponent(1.5)).gap));
  }
  CHECK(worst < 1e-13);
  CHECK(largest15 > 1.0);
}

TEST_CASE("half-integer offset") {
  CHECK(half_integer_offset(1.0) == 0.0);
  CHECK(half_integer_offset(std::sqrt(0.5)) == doctest::Approx(0.0).scale(1.0));
  CHECK(half_integer_offset(std::sqrt(0.75)) == doctest::Approx(0.5));
  CHECK(half_integer_offset(std::sqrt(0.6)) == doctest::Approx(0.2));
}

TEST_CASE("hand-built witness verifies, perturbed ones do not") {
  auto A = PointSet::bourgain(2);
  ProgressionWitness w;
  w.x = {1.0, 0.0};
  w.y = {0.0, 1.0};  // x, x+y, x+2y have |.|^2 = 1, 2, 5
  w.p = 2.0;
  w.gap = 1.0;
  w.target = 1.0;
  w.tolerance = 1e-9;
  CHECK(verify_witness(A, w));
  auto off = w;
  off.target = 1.1;
  CHECK_FALSE(verify_witness(A, off));
  auto out = w;
  out.x = {0.7, 0.0};
  CHECK_FALSE(verify_witness(A, out));
  auto wrong_dim = w;
  wrong_dim.x = {1.0};
  CHECK_FALSE(verify_witness(A, wrong_dim));
}

TEST_CASE("progression search: witnesses verify and runs are reproducible across threads") {
  auto A = PointSet::bourgain(2);
  setenv("LPROTH_THREADS", "1", 1);
  auto r1 = progression_search(A, LpExponent(2.0), 1.0, 1e-3, 2'000'000, 5, ProbeBox{});
  setenv("LPROTH_THREADS", "3", 1);
  auto r3 = progression_search(A, LpExponent(2.0), 1.0, 1e-3, 2'000'000, 5, ProbeBox{});
  unsetenv("LPROTH_THREADS");
  REQUIRE(r1.witness);
  REQUIRE(r3.witness);
  CHECK(r1.witness->x == r3.witness->x);
  CHECK(r1.witness->y == r3.witness->y);
  CHECK(r1.proposals == r3.proposals);
  CHECK(verify_witness(A, *r1.witness));
  CHECK(std::abs(lp_norm(r1.witness->y, LpExponent(2.0)) - 1.0) <= 1e-3);
  CHECK_FALSE(r1.exhausted);
  CHECK_THROWS_AS(progression_search(A, LpExponent(2.0), 1.0, 0.0, 10, 1, ProbeBox{}), Error);
}

TEST_CASE("a forbidden gap exhausts a small budget") {
  auto A = PointSet::bourgain(2);
  auto r = progression_search(A, LpExponent(2.0), std::sqrt(0.75), 1e-3, 200'000, 3, ProbeBox{});
  CHECK_FALSE(r.witness);
  CHECK(r.exhausted);
  CHECK(r.proposals == 200'000);
  const double lams[] = {std::sqrt(0.75), std::sqrt(3.25)};
  auto ctl = forbidden_gap_control(lams, 1e-3, 100'000, 4);
  CHECK(ctl.realized == 0);
  CHECK(ctl.searches.size() == 2);
}

TEST_CASE("gap spectrum: obstruction for p = 2, consistent bookkeeping") {
  auto A = PointSet::bourgain(2);
  auto s = gap_spectrum_sample(A, LpExponent(2.0), 5000, ProbeBox{}, 9);
  REQUIRE(s.gaps.size() == 5000);
  double worst = 0.0;
  std::uint64_t in_hist = 0;
  for (double g : s.gaps) worst = std::max(worst, half_integer_offset(g));
  for (auto c : s.histogram) in_hist += c;
  CHECK(worst <= 0.4 + 1e-9);
  CHECK(s.max_half_integer_offset == worst);
  CHECK(in_hist == s.gaps.size());
  CHECK(s.min_gap == *std::min_element(s.gaps.begin(), s.gaps.end()));
  std::ostringstream csv;
  s.write_csv(csv);
  CHECK(csv.str().rfind("gap,count\n", 0) == 0);
}

TEST_CASE("gap spectrum for p = 1.5 escapes the half-integer lattice") {
  auto A = PointSet::bourgain(2);
  auto s = gap_spectrum_sample(A, LpExponent(1.5), 20000, ProbeBox{}, 10);
  CHECK(s.max_half_integer_offset > 0.45);
}

TEST_CASE("max_hole against a direct scan") {
  GapSpectrum s;
  s.gaps = {0.5, 0.1, 2.0, 0.9, 5.0};
  CHECK(s.max_hole(0.0, 3.0) == doctest::Approx(1.1));  // 0.9 .. 2.0
  CHECK(s.max_hole(0.0, 0.6) == doctest::Approx(0.4));  // 0.1 .. 0.5
  CHECK_THROWS_AS(s.max_hole(1.0, 1.0), Error);
}

TEST_CASE("density estimates") {
  auto full = estimate_density(PointSet::full_box(2, 10.0), ProbeBox{}, 10000, 1);
  CHECK(full.value == 1.0);
  auto b = estimate_density(PointSet::bourgain(2), ProbeBox{}, 400000, 2);
  CHECK(std::abs(b.value - 0.2) < 0.01);
  CHECK(b.std_error > 0.0);
}

TEST_CASE("lacunary sequences") {
  auto s = lacunary_generate(1.5, 2.0, 4);
  CHECK(s.values == std::vector<double>{1.5, 3.0, 6.0, 12.0});
  CHECK(s.min_ratio == 2.0);
  CHECK_THROWS_AS(lacunary_generate(1.0, 2.0, 3), Error);
  CHECK_THROWS_AS(lacunary_generate(1.5, 1.99, 3), Error);
  CHECK_THROWS_AS(LacunarySequence::from_values({1.0, 3.0, 5.0}), Error);
  CHECK_THROWS_AS(LacunarySequence::from_values({}), Error);
  CHECK(LacunarySequence::from_values({2.0, 5.0}).min_ratio == 2.5);
}

TEST_CASE("theorem experiment on a few seeds") {
  auto seq = lacunary_generate(2.0, 2.0, 3);
  auto t = theorem_experiment(0.4, LpExponent(1.5), 2, 64.0, seq, 4, 17, 50000);
  CHECK(t.seeds.size() == 4);
  CHECK(t.tolerance == 2.0);
  for (const auto& s : t.seeds) {
    CHECK(s.density > 0.3);
    CHECK(s.density < 0.5);
    CHECK(s.realized.size() == s.witnesses.size());
    for (const auto& w : s.witnesses) CHECK(std::abs(w.gap - w.target) <= w.tolerance);
  }
  CHECK_THROWS_AS(theorem_experiment(0.4, LpExponent(2.0), 2, 64.0, seq, 1, 1), Error);
  CHECK_THROWS_AS(theorem_experiment(0.4, LpExponent(1.5), 2, 16.0, seq, 1, 1), Error);
  // Reproducible.
  auto t2 = theorem_experiment(0.4, LpExponent(1.5), 2, 64.0, seq, 4, 17, 50000);
  CHECK(t2.seeds_realizing == t.seeds_realizing);
  CHECK(t2.seeds[0].realized == t.seeds[0].realized);
}

TEST_CASE("witness csv layout") {
  ProgressionWitness w;
  w.x = {1.0, 2.0};
  w.y = {0.5, 0.25};
  std::ostringstream out;
  write_witnesses_csv(std::span<const ProgressionWitness>(&w, 1), out);
  std::string s = out.str();
  CHECK(s.rfind("x,y,p,gap,target,tolerance\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 2);
}
