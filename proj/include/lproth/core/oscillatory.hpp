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

// One-dimensional oscillatory integrals behind the U^3 decay of e^{it y^p}:
//
//   psi_{k,l}(y) = y^p + (y+k+l)^p - (y+k)^p - (y+l)^p
//   I_{k,l}(t)   = int phi_+(y) phi_+(y+k) phi_+(y+l) phi_+(y+k+l) e^{i t psi_{k,l}(y)} dy
//   I(t)         = int int |I_{k,l}(t)|^2 dk dl
//
// and the lacunary multiplier m(xi) = sum_j khat_j(eta) khat_j(zeta).

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lproth/core/kernels.hpp"
#include "lproth/core/lp_geometry.hpp"
#include "lproth/core/numerics.hpp"

namespace lproth {

// phi_+: 0 outside [0.25, 2.5], 1 on [0.5, 2].
SplineBump phi_plus();

struct PhaseFamily {
  LpExponent p{3.0};
  double k = 0.0;
  double l = 0.0;
  SplineBump cutoff = phi_plus();

  bool admissible(double y) const;
  // Interval of y on which all four shifted points lie in supp phi_+ (may be
  // empty: lo >= hi).
  double support_lo() const;
  double support_hi() const;
  double amplitude(double y) const;  // Delta_{k,l} phi_+(y)
};

struct PhaseValue {
  double value = 0.0;
  double derivative = 0.0;
};

// Direct formula and its derivative.
PhaseValue phase_eval(const PhaseFamily& fam, double y);
// Taylor-remainder forms
//   psi  = k l p (p-1)       int_{[0,1]^2} (y + uk + sl)^{p-2} du ds
//   psi' = k l p (p-1)(p-2)  int_{[0,1]^2} (y + uk + sl)^{p-3} du ds
// by tensor Gauss-Legendre with `points` nodes per axis.
PhaseValue phase_eval_taylor(const PhaseFamily& fam, double y, unsigned points = 24);

struct OscillatoryBudget {
  // Gauss-Legendre nodes per panel of the (k, l) grid and the geometric
  // grading ratio of its panels toward 0.
  unsigned kl_points = 8;
  double kl_ratio = 2.0;
  // Inner integral: panels span at most this many periods of t psi', each
  // carrying inner_points Gauss-Legendre nodes.
  double periods_per_panel = 2.0;
  unsigned inner_points = 20;
  std::size_t max_panels = 4'000'000;

  // Twice the resolution in every direction.
  OscillatoryBudget refined() const;
};

// Single evaluation at the given resolution.
cplx inner_integral_at(const PhaseFamily& fam, double t, const OscillatoryBudget& budget = {});

struct InnerIntegral {
  cplx value;
  // |I(budget) - I(budget.refined())|, the Richardson-style halving estimate.
  double error = 0.0;
};
// Returns the refined value with the halving error estimate.
InnerIntegral inner_integral(const PhaseFamily& fam, double t, const OscillatoryBudget& budget = {});

// int Delta_{k,l} phi_+ (the t = 0 value).
double inner_mass(const PhaseFamily& fam);

double i_of_t(const LpExponent& p, double t, const OscillatoryBudget& budget = {});

struct DecayFit {
  std::vector<double> t_samples;
  std::vector<double> values;  // |I(t)|
  double slope = 0.0;
  double r_theory = 0.0;
  // Envelope c t^{-1/r} anchored at the first sample; envelope_holds records
  // whether every later sample stays below it.
  double c_fit = 0.0;
  bool envelope_holds = false;
  // Largest relative change of I(t) under budget refinement (only when
  // requested, else 0).
  double self_consistency = 0.0;
};

// `count` log-spaced samples over [t_lo, t_hi] (at least 6 samples over two
// decades inside [10, 1e5]).
DecayFit decay_fit(const LpExponent& p, double t_lo, double t_hi, int count,
                   const OscillatoryBudget& budget = {}, bool check_refinement = false);
void write_decay_csv(const DecayFit& fit, std::ostream& out);

struct StationaryBound {
  std::vector<double> etas;
  std::vector<double> minima;  // min |psi'| over the admissible region
  double fitted_exponent = 0.0;
  bool degenerate = false;     // psi' == 0 identically (p = 2)
};
// Region: eta <= |k|, |l| <= 1/2 and y with y, y+k, y+l, y+k+l in [eta, 2.5].
StationaryBound stationary_lower_bound_check(const LpExponent& p, std::span<const double> etas,
                                             int k_points = 64, int y_points = 240);

struct LacunarySums {
  double min_sum = 0.0;       // sum min(mu_j, 1/mu_j)
  double weighted_sum = 0.0;  // sum mu_j^k (1 + mu_j)^{-k-1}
  double bound = 4.0;
  bool holds = false;
};
LacunarySums lacunary_sum_bound(std::span<const double> mu, int k);

struct MultiplierAudit {
  double eta = 0.0;   // -xi1 + xi2 - xi3
  double zeta = 0.0;  // xi1 + 2 xi3
  double m = 0.0;     // m is real: khat_j are real for even kernels
  double grad = 0.0;  // |grad m| by central differences (0 when skipped)
  double dist = 0.0;  // dist(xi, Gamma')
  bool gradient_checked = false;
};

// dist((xi1, xi2, xi3), {xi1 - xi2 + xi3 = 0, xi1 + 2 xi3 = 0}).
double gamma_prime_distance(double xi1, double xi2, double xi3);

// Multiplier of the lacunary kernel family in d = 1, with khat tabulated up
// to the largest frequency lambda_J * max_abs_xi * 3 it can meet.
class MultiplierEvaluator {
 public:
  MultiplierEvaluator(const LpExponent& p, std::span<const double> lambdas, double epsilon,
                      const MollifierPair& m, double max_abs_xi);
  double value(double xi1, double xi2, double xi3) const;
  MultiplierAudit audit(double xi1, double xi2, double xi3, bool with_gradient = true) const;
  std::size_t size() const { return lambdas_.size(); }

 private:
  std::vector<double> lambdas_;
  double max_abs_xi_;
  KernelTransform1D khat_;
};

MultiplierAudit multiplier_check(double xi1, double xi2, double xi3, const LpExponent& p,
                                 std::span<const double> lambdas, double epsilon,
                                 const MollifierPair& m);

}  // namespace lproth
