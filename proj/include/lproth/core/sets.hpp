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

// Point sets in R^d and randomized searches for three-term progressions
// {x, x+y, x+2y} with prescribed |y|_p.
//
// The Bourgain set {x : dist(|x|_2^2, Z>=0) <= 1/10} only admits gaps with
// dist(2 |y|_2^2, Z) <= 4/10, because
//
//   2 |y|^2 = |x|^2 + |x+2y|^2 - 2 |x+y|^2
//
// and the right side is within 1/10 + 1/10 + 2/10 of an integer.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lproth/core/forms.hpp"
#include "lproth/core/lp_geometry.hpp"

namespace lproth {

enum class SetKind { bourgain, lattice_cube, grid_indicator, full_box };
const char* set_kind_name(SetKind kind);

bool bourgain_membership(std::span<const double> x);
bool lattice_cube_membership(std::span<const double> x, double eps0);

// Membership is a pure predicate. bourgain and lattice_cube are unbounded;
// grid_indicator and full_box live in [0, N]^d.
class PointSet {
 public:
  static PointSet bourgain(int d);
  static PointSet lattice_cube(int d, double eps0);
  // Members: points of [0, N]^d whose cell carries a value >= 1/2.
  static PointSet grid_indicator(BoxFunction f);
  static PointSet full_box(int d, double N);

  SetKind kind() const { return kind_; }
  int dim() const { return d_; }
  double eps0() const { return eps0_; }
  // Side of the bounded kinds (0 for unbounded ones).
  double extent() const { return extent_; }

  bool contains(std::span<const double> x) const;

 private:
  PointSet(SetKind kind, int d) : kind_(kind), d_(d) {}

  SetKind kind_;
  int d_;
  double eps0_ = 0.0;
  double extent_ = 0.0;
  std::optional<BoxFunction> grid_;
};

// Sampling box [lo, hi]^d.
struct ProbeBox {
  double lo = 0.0;
  double hi = 10.0;
};

struct MonteCarloDensity {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};
MonteCarloDensity estimate_density(const PointSet& A, const ProbeBox& box,
                                   std::uint64_t samples, std::uint64_t seed);

struct ParallelogramCheck {
  double lhs = 0.0;  // 2 |y|_p^p
  double rhs = 0.0;  // |x|_p^p + |x+2y|_p^p - 2 |x+y|_p^p
  double gap = 0.0;  // lhs - rhs
};
ParallelogramCheck parallelogram_check(std::span<const double> x, std::span<const double> y,
                                       const LpExponent& p);

// Distance of 2 s^2 to the nearest integer, i.e. of s^2 to the half-integer
// lattice measured on the doubled scale.
double half_integer_offset(double s);

struct ProgressionWitness {
  VecD x;
  VecD y;
  double p = 2.0;
  double gap = 0.0;      // |y|_p
  double target = 0.0;   // lambda searched for
  double tolerance = 0.0;
  // Distances of x, x+y, x+2y to A; the shipped sets are predicates, so these
  // are 0 for any verified witness.
  double residuals[3] = {0.0, 0.0, 0.0};
};

// Re-evaluates membership of all three points and | |y|_p - target | <= tol
// from scratch.
bool verify_witness(const PointSet& A, const ProgressionWitness& w);

struct SearchResult {
  std::optional<ProgressionWitness> witness;
  std::uint64_t proposals = 0;
  std::uint64_t budget = 0;
  // True when the whole budget was spent without a witness. This is a
  // "not found", never a proof of nonexistence.
  bool exhausted = false;
};

// Randomized search: x uniform in the probe box, y a sphere-quadrature node of
// S_lambda jittered by at most tol / 2 in l^p norm. The budget counts (x, y)
// proposals. Runs in 64 fixed chunks with their own streams; the witness from
// the lowest chunk that found one is returned.
SearchResult progression_search(const PointSet& A, const LpExponent& p, double lambda,
                                double tol, std::uint64_t budget, std::uint64_t seed,
                                const ProbeBox& box);

struct GapSpectrum {
  double p = 2.0;
  std::vector<double> gaps;  // |y|_p of verified progressions, in sample order
  std::uint64_t proposals = 0;
  std::uint64_t requested = 0;
  double max_half_integer_offset = 0.0;  // max over gaps of half_integer_offset
  double max_spectral_gap = 0.0;         // largest hole between sorted gaps
  double min_gap = 0.0;
  double max_gap = 0.0;
  // Histogram over [0, max_gap] with `bin_width` bins.
  double bin_width = 0.05;
  std::vector<std::uint64_t> histogram;

  // Largest hole in [lo, hi] left by the recorded gaps, the window ends
  // included.
  double max_hole(double lo, double hi) const;
  void write_csv(std::ostream& out) const;  // columns gap, count
};

// x and y uniform in the probe box and in [-(hi-lo)/2, (hi-lo)/2]^d; keeps
// (x, y) when x, x+y, x+2y all lie in the box and in A, re-verified. Stops at
// n_samples hits or 4000 n_samples proposals.
GapSpectrum gap_spectrum_sample(const PointSet& A, const LpExponent& p, std::uint64_t n_samples,
                                const ProbeBox& box, std::uint64_t seed);

struct LacunarySequence {
  std::vector<double> values;
  double min_ratio = 0.0;  // certificate: min lambda_{j+1} / lambda_j

  // Throws unless values increase, are positive and min_ratio >= 2.
  static LacunarySequence from_values(std::vector<double> values);
};
LacunarySequence lacunary_generate(double lambda1, double ratio, int J);

struct SeedOutcome {
  std::uint64_t seed_index = 0;
  double density = 0.0;  // realized grid mean
  std::vector<int> realized;  // 0-based j with a verified witness
  std::vector<ProgressionWitness> witnesses;
};

struct TheoremReport {
  double delta = 0.0;
  double p = 0.0;
  int d = 0;
  double N = 0.0;
  double tolerance = 0.0;
  LacunarySequence sequence;
  std::vector<SeedOutcome> seeds;
  int seeds_realizing = 0;
  bool all_seeds_realize = false;
};

// Random density-delta grid-indicator sets (unit cells, Bernoulli(delta)) and
// a progression search at every lambda_j with tol = d (one cell per axis).
TheoremReport theorem_experiment(double delta, const LpExponent& p, int d, double N,
                                 const LacunarySequence& sequence, int seeds,
                                 std::uint64_t master_seed,
                                 std::uint64_t budget_per_search = 200000);

struct ForbiddenGapControl {
  std::vector<double> lambdas;
  std::vector<SearchResult> searches;
  int realized = 0;
};
// p = 2 control on the Bourgain set: gaps with 2 lambda^2 a half-odd integer
// are out of reach.
ForbiddenGapControl forbidden_gap_control(std::span<const double> lambdas, double tol,
                                          std::uint64_t budget, std::uint64_t seed,
                                          const ProbeBox& box = {});

void write_witnesses_csv(std::span<const ProgressionWitness> ws, std::ostream& out);

}  // namespace lproth
