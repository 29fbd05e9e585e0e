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

// Mollifier pair and the shell kernels built from it.
//
// Fourier convention for psi_hat: psi_hat(u) = int psi(s) e^{isu} ds. The pair
// is generated from b(t) = (1 - t^2)^2 on [-1, 1]:
//
//   g(x)     = int b(t) e^{ixt} dt
//   psi(x)   = (g(x) / g(0))^2
//   psi_hat  = 2 pi (b * b) / g(0)^2      (supported on [-2, 2])
//
// Shell kernels, with |.| the l^p norm:
//
//   omega^eps_lambda(y) = lambda^{-d} eps^{-1} psi_hat((|y/lambda|^p - 1) / eps)
//   omega_lambda        = omega^1_lambda
//   k^eps_lambda        = omega^eps_lambda - c1(eps) omega_lambda
//
// where c1(eps) = int omega^eps / int omega makes k integrate to zero.

#pragma once

#include <complex>
#include <iosfwd>
#include <span>

#include "lproth/core/lp_geometry.hpp"
#include "lproth/core/numerics.hpp"

namespace lproth {

class MollifierPair {
 public:
  static MollifierPair build();

  double psi(double x) const;
  double psi_hat(double u) const;
  // psi_hat(u) evaluated as the Fourier integral of psi; independent of the
  // convolution formula used by psi_hat().
  double psi_hat_by_fourier_quadrature(double u) const;

  // psi_hat >= c_low on [-tau, tau].
  double tau() const { return tau_; }
  double c_low() const { return c_low_; }
  // sup psi_hat (attained at 0).
  double m_psi() const { return m_psi_; }

  void write_profile_csv(std::ostream& out, int samples = 401) const;

 private:
  MollifierPair() = default;
  double tau_ = 1.0;
  double c_low_ = 0.0;
  double m_psi_ = 0.0;
};

struct KernelParams {
  LpExponent p{2.0};
  int d = 1;
  double lambda = 1.0;
  double epsilon = 1.0;

  void validate() const;
};

// Radius beyond which every kernel with this (p, lambda) vanishes:
// |y/lambda|^p <= 3.
double kernel_support_radius(const LpExponent& p, double lambda);

double omega_eps_eval(std::span<const double> y, const KernelParams& params,
                      const MollifierPair& m);
// Same kernel as a function of u = |y/lambda|^p (radial profile), without the
// lambda^{-d} prefactor.
double omega_eps_profile(double u, double epsilon, const MollifierPair& m);

// omega^eps(y) at lambda = 1 computed from the oscillatory representation
// int e^{it(|y|^p - 1)} psi(eps t) dt by direct quadrature in t.
double omega_eps_oscillatory(std::span<const double> y, const LpExponent& p, double epsilon,
                             const MollifierPair& m);

struct MassResult {
  double value = 0.0;
  double error = 0.0;
};

// int omega^eps(y) dy (independent of lambda), through the radial reduction
// int F(|y|^p) dy = nu_p (d/p) int F(u) u^{d/p - 1} du and adaptive quadrature.
MassResult kernel_total_mass(const KernelParams& params, const MollifierPair& m);

// c1(eps) = int omega^eps / int omega; exactly 1 at eps = 1.
double c1_eps(double epsilon, const LpExponent& p, int d, const MollifierPair& m);

class CancelledKernel {
 public:
  CancelledKernel(const KernelParams& params, const MollifierPair& m);

  const KernelParams& params() const { return params_; }
  double c1() const { return c1_; }

  double operator()(std::span<const double> y) const;
  // Profile in u = |y/lambda|^p, without the lambda^{-d} prefactor.
  double profile(double u) const;

  // int k(y) e^{-i y.eta} dy for d in {1, 2}, by panel quadrature over the
  // compact support with breakpoints at every kink of the profile.
  cplx fourier(std::span<const double> eta) const;
  // int k(y) dy computed over Cartesian coordinates (independent of the
  // radial route that produced c1).
  double cartesian_integral() const;

 private:
  double fourier_1d(double eta) const;
  double fourier_2d(double eta1, double eta2) const;
  std::vector<double> radial_breaks() const;

  KernelParams params_;
  const MollifierPair* m_;
  double c1_;
};

inline double cancelled_kernel_eval(std::span<const double> y, const KernelParams& j_params,
                                    const MollifierPair& m) {
  return CancelledKernel(j_params, m)(y);
}

inline cplx kernel_fourier(std::span<const double> eta, const KernelParams& j_params,
                           const MollifierPair& m) {
  return CancelledKernel(j_params, m).fourier(eta);
}

// Fast evaluator of the 1-D cancelled kernel transform khat_1(x) at lambda = 1,
// caching kernel samples on nested dyadic panels so repeated evaluations at
// large frequencies reuse them. k_lambda_hat(eta) = khat_1(lambda * eta).
class KernelTransform1D {
 public:
  // Frequencies up to |x| <= max_frequency are resolved.
  KernelTransform1D(const LpExponent& p, double epsilon, const MollifierPair& m,
                    double max_frequency);
  double operator()(double x) const;
  double max_frequency() const { return max_freq_; }
  double c1() const { return c1_; }

 private:
  struct Level {
    std::vector<double> y;
    std::vector<double> wk;  // weight * k(y)
  };
  double c1_;
  double max_freq_;
  double base_len_;
  std::vector<Level> levels_;
};

}  // namespace lproth
