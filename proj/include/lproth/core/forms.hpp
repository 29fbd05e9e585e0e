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

// Trilinear progression-counting forms on gridded functions over [0, N]^d.
//
// For a kernel w the mollified forms are
//
//   M_w(f) = int int f(x) f(x+y) f(x+2y) w(y) dy dx.
//
// x runs over cell centres (i + 1/2) h and y over the lattice h Z^d, so x + y
// and x + 2y land on cell centres again and no interpolation is needed. The
// inner sum T(y) = sum_x f(x) f(x+y) f(x+2y) is tabulated once and shared by
// M_lambda, M^eps_lambda and E_lambda. N_lambda uses sphere-quadrature nodes,
// which are off-grid, so it interpolates f multilinearly.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lproth/core/kernels.hpp"
#include "lproth/core/lp_geometry.hpp"

namespace lproth {

class BoxFunction {
 public:
  BoxFunction(int d, double N, double h);

  static BoxFunction constant(int d, double N, double h, double value);
  // 1 at cell centres accepted by `member`, 0 elsewhere.
  static BoxFunction indicator(int d, double N, double h,
                               const std::function<bool(std::span<const double>)>& member);

  int d() const { return d_; }
  double N() const { return N_; }
  double h() const { return h_; }
  // Cells per side.
  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Value at cell index (zero outside the box).
  double node(std::span<const long> idx) const;
  // Multilinear interpolation between cell centres, clamped inside [0, N]^d,
  // zero outside.
  double eval(std::span<const double> x) const;
  VecD cell_centre(std::size_t flat) const;

  double integral() const;
  double mean() const;
  // int f^4.
  double l4_power() const;
  bool is_constant() const;

  // Throws unless every value lies in [-1, 1].
  void validate(const std::string& who) const;

 private:
  int d_;
  double N_;
  double h_;
  int n_;
  std::vector<double> values_;
};

enum class FormKind { n_lambda, m_lambda, m_eps_lambda, e_lambda };
const char* form_kind_name(FormKind kind);

struct FormValue {
  FormKind kind = FormKind::m_lambda;
  double lambda = 0.0;
  std::optional<double> epsilon;
  double value = 0.0;
  double quadrature_error = 0.0;
};

// T(j) = sum_x f(x) f(x + j h) f(x + 2 j h) for lattice offsets |j_i| <= radius.
// Indexed as a (2 radius + 1)^d array with offset `radius`.
struct CorrelationTable {
  int d = 1;
  long radius = 0;
  std::vector<double> values;

  double at(std::span<const long> j) const;
};
CorrelationTable correlation_table(const BoxFunction& f, long radius);

// Builds T for lattice radius ceil(support / h) and sums h^{2d} T(y) w(y).
// `weight` receives the lattice vector y.
double lattice_form(const BoxFunction& f, double support,
                    const std::function<double(std::span<const double>)>& weight);

FormValue m_lambda(const BoxFunction& f, const LpExponent& p, double lambda,
                   const MollifierPair& m);
FormValue m_eps_lambda(const BoxFunction& f, const LpExponent& p, double lambda,
                       double epsilon, const MollifierPair& m);
// Single pass with the fused kernel k = omega^eps - c1 omega.
FormValue e_lambda(const BoxFunction& f, const LpExponent& p, double lambda, double epsilon,
                   const MollifierPair& m);
FormValue n_lambda(const BoxFunction& f, double lambda, const SphereQuadrature& quad);

// The three forms evaluated over one shared correlation table.
struct FormTriple {
  FormValue m;
  FormValue m_eps;
  FormValue e;
  double c1 = 1.0;
  // M^eps - c1 M - E
  double decomposition_residual = 0.0;
};
FormTriple form_triple(const BoxFunction& f, const LpExponent& p, double lambda, double epsilon,
                       const MollifierPair& m);

struct EnergyReport {
  std::vector<double> lambdas;
  std::vector<double> energies;  // |E_{lambda_j}(f)|^2
  double total = 0.0;
  // total / (N^d int f^4)
  double ratio = 0.0;
};
EnergyReport energy_sum(const BoxFunction& f, const LpExponent& p,
                        std::span<const double> lambdas, double epsilon,
                        const MollifierPair& m);

struct PigeonholeResult {
  std::uint64_t qualifying = 0;  // I
  std::uint64_t boxes = 0;       // L
  double delta = 0.0;
  // 2 I >= delta L, checked in integer arithmetic for indicators.
  bool certificate = false;
};
PigeonholeResult box_partition_pigeonhole(const BoxFunction& f, double ell);

struct MainTermReport {
  double min_normalized = 0.0;  // min M_lambda / N^d over trials
  double c_hat = 0.0;
  double c_omega = 0.0;         // int omega
  std::vector<double> normalized;
  bool all_positive = false;
};
// Random sets of density delta on unit cells: i.i.d. Bernoulli cells for even
// trials, random stripes for odd ones.
MainTermReport roth_main_term_experiment(double delta, const LpExponent& p, int d, double N,
                                         double lambda, int trials, const MollifierPair& m,
                                         std::uint64_t seed, double h = 0.25);

}  // namespace lproth
