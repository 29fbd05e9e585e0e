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

// l^p norms, balls and quadrature rules for the normalized surface measure
//
//   sigma_lambda = lambda^{p-d} |grad Q|^{-1} dS  on  S_lambda = {|y|_p = lambda},
//
// with Q(y) = |y|_p^p. The total mass of sigma_lambda is nu_p * d / p for every
// lambda, where nu_p is the volume of the unit l^p ball.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lproth {

// Metric exponent p >= 1 (finite). p = 1 and p = 2 are representable because
// the counterexample and degeneracy demonstrations need them; the theorem
// experiments reject them via require_nondegenerate().
class LpExponent {
 public:
  explicit LpExponent(double p);

  double value() const { return p_; }
  bool is_one() const { return p_ == 1.0; }
  bool is_two() const { return p_ == 2.0; }
  bool degenerate() const { return is_one() || is_two(); }

  // r(p) = max(p + 1, 2p - 1), the oscillatory decay parameter.
  double r() const;
  // gamma_p = 1 / (8 r(p)).
  double gamma() const { return 1.0 / (8.0 * r()); }

  void require_nondegenerate(const std::string& who) const;

 private:
  double p_;
};

using VecD = std::vector<double>;

void require_finite(std::span<const double> y, const std::string& who);

double lp_norm(std::span<const double> y, const LpExponent& p);
// Sum |y_i|^p.
double lp_power_sum(std::span<const double> y, const LpExponent& p);

// Euclidean magnitude of grad Q, (grad Q)_i = p |y_i|^{p-1} sgn(y_i).
double grad_q_magnitude(std::span<const double> y, const LpExponent& p);

// Closed-form volume (2 Gamma(1 + 1/p))^d / Gamma(1 + d/p).
double unit_ball_volume(const LpExponent& p, int d);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

// Rejection-sampling estimate of nu_p from `samples` uniform draws in
// [-1, 1]^d; d > 6 is rejected.
MonteCarloEstimate unit_ball_volume_mc(const LpExponent& p, int d, std::uint64_t samples,
                                       std::uint64_t seed);

enum class QuadratureMode { deterministic_graph, shell_monte_carlo };

struct SphereQuadrature {
  std::vector<VecD> nodes;
  std::vector<double> weights;
  double lambda = 1.0;
  double p = 2.0;
  int d = 1;
  QuadratureMode mode = QuadratureMode::deterministic_graph;
  // Tolerance on | |y|_p - lambda | satisfied by every node.
  double node_tolerance = 0.0;
  // Monte Carlo standard error of the total mass (0 for deterministic rules).
  double mass_std_error = 0.0;

  double total_mass() const;
  // Mass of the orthant with the given sign pattern (bit i set = negative y_i);
  // coordinates equal to zero count as positive.
  double orthant_mass(unsigned sign_bits) const;
  void write_csv(std::ostream& out) const;
};

// Shell width h used by the Monte Carlo mode: nodes satisfy
// 1 - h <= |y/lambda|_p^p <= 1 + h, each carrying weight V_box / (2 h n).
inline constexpr double kShellHalfWidth = 1e-3;

// Deterministic mode (d in {1, 2, 3}): each orthant of S_lambda is written as
// the graph y_d = (lambda^p - sum_{i<d} |y_i|^p)^{1/p}; in the coordinates
// t_i = |y_i|^p the folded density is p^{-d} prod t_i^{1/p - 1} on the simplex
// sum t_i = lambda^p, integrated with a tanh-sinh product rule. `n` is the
// approximate number of nodes per orthant and per simplex direction.
// Shell-MC mode (d <= 8): `n` proposals uniform in the bounding box.
SphereQuadrature sphere_quadrature(const LpExponent& p, int d, double lambda,
                                   std::uint64_t n, QuadratureMode mode,
                                   std::uint64_t seed = 0);

struct MassInvarianceReport {
  std::vector<double> lambdas;
  std::vector<double> masses;
  std::vector<double> std_errors;
  double max_relative_deviation = 0.0;
};

MassInvarianceReport sigma_mass_invariance(const LpExponent& p, int d,
                                           std::span<const double> lambdas,
                                           std::uint64_t n, QuadratureMode mode,
                                           std::uint64_t seed = 0);

}  // namespace lproth
