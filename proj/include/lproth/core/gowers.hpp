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

// Gowers U^2 / U^3 norms on Z_M^d.
//
// With counting measure
//
//   |F|_{U2}^4 = sum_{x,h1,h2} F(x) F~(x+h1) F~(x+h2) F(x+h1+h2)
//              = M^{-d} sum_xi |F^(xi)|^4,          F^(xi) = sum_x F(x) e^{-2 pi i x.xi/M}
//   |F|_{U3}^8 = sum_{x,y} prod_{nu in {0,1}^3} C^{|nu|} F(x + nu.y)
//              = sum_h |Delta_h F|_{U2}^4,          Delta_h F(x) = F(x+h) F~(x)
//
// (F~ the conjugate, C conjugation). A grid with spacing `cell` stands in for
// R^d: the continuum integrals pick up cell^{3d} (U^2) and cell^{4d} (U^3).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lproth/core/forms.hpp"
#include "lproth/core/kernels.hpp"
#include "lproth/core/lp_geometry.hpp"
#include "lproth/core/numerics.hpp"

namespace lproth {

struct CyclicGridFunction {
  int M = 1;
  int d = 1;
  double cell = 1.0;
  std::vector<cplx> values;

  static CyclicGridFunction zeros(int M, int d, double cell = 1.0);
  std::size_t size() const { return values.size(); }
  std::size_t flat(std::span<const long> idx) const;  // indices taken mod M
  std::vector<long> coords(std::size_t flat) const;
  void validate() const;
};

CyclicGridFunction delta_h(const CyclicGridFunction& F, std::span<const long> h);

// Sums with counting measure (no cell factors).
double u2_sum_brute(const CyclicGridFunction& F);
double u2_sum_spectral(const CyclicGridFunction& F);
// Complex sums; the imaginary part is rounding noise.
cplx u3_sum_brute(const CyclicGridFunction& F);
cplx u3_sum_recursive(const CyclicGridFunction& F);

enum class U3Path { brute_force, recursive };

// Largest brute-force U^3 problem accepted (number of (x, y1, y2, y3) tuples).
inline constexpr double kU3BruteBudget = 1e8;

// Continuum-normalized norms: (cell^{3d} sum)^{1/4}, (cell^{4d} sum)^{1/8}.
double u2_norm(const CyclicGridFunction& F);
double u3_norm(const CyclicGridFunction& F, U3Path path = U3Path::recursive);

// |Delta_h F|_{U2}^4 for every h, as (flat h, value) rows.
void write_delta_profile_csv(const CyclicGridFunction& F, std::ostream& out);

struct GridSpec {
  int M = 64;
  int d = 1;
  double cell = 1.0;
};

// Grid of period M whose span is `periods` times the kernel support radius.
GridSpec kernel_grid(const LpExponent& p, double lambda, int d, int M, double periods = 4.0);
// Radial thickness of the shell {|y/lambda|^p in [1 - 2w, 1 + 2w]}.
double shell_width(const LpExponent& p, double lambda, double w);

// chi_+ (omega^eta_lambda - omega^eps_lambda) sampled at y = index * cell.
CyclicGridFunction kernel_difference_grid(const LpExponent& p, double lambda, double eta,
                                          double epsilon, const GridSpec& grid,
                                          const MollifierPair& m);

struct U3Distance {
  double eta = 0.0;
  double epsilon = 0.0;
  double lambda = 1.0;
  double value = 0.0;
  GridSpec grid;
};

U3Distance u3_kernel_distance(double eta, double epsilon, const LpExponent& p,
                              const GridSpec& grid, const MollifierPair& m,
                              double lambda = 1.0);

// Cutoff of the tensor check: even bump, 1 on [-C, C], 0 outside [-2C, 2C],
// C = 3^{1/p}; phi_+ is its restriction to y >= 0.
SplineBump tensor_cutoff(const LpExponent& p);

struct TensorCheck {
  double lhs = 0.0;  // |Phi_+ e^{it|y|_p^p}|_{U3(R^d)}
  double rhs = 0.0;  // |phi_+ e^{it y^p}|_{U3(R)}^d
  double relative_gap = 0.0;
  double cell = 0.0;
  // |t| p 3^{p-1} cell > 0.5: the phase moves by more than half a radian per
  // cell and neither side approximates its continuum value well.
  bool undersampled = false;
};
// strict_resolution = true turns an undersampled grid into an error.
TensorCheck u3_tensor_check(const LpExponent& p, double t, int d, int M,
                            bool strict_resolution = false);

struct FormControl {
  double T = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double g_u3 = 0.0;
};
// d = 1. g lives on a cyclic grid with the same spacing as f; index i < M/2
// stands for y = i cell, the rest for y = (i - M) cell.
FormControl u3_form_control_check(const BoxFunction& f, const CyclicGridFunction& g,
                                  double lambda);

}  // namespace lproth
