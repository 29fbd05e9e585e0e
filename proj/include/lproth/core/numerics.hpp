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

// Shared numerical plumbing: compensated accumulation, deterministic chunked
// parallelism, a reproducible PRNG, the C^4 spline bump and quadrature rules.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace lproth {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Neumaier variant of Kahan summation.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.c_);
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double get() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add(const ComplexCompensatedSum& o) {
    re_.add(o.re_);
    im_.add(o.im_);
  }
  cplx get() const { return {re_.get(), im_.get()}; }

 private:
  CompensatedSum re_, im_;
};

// Worker cap from LPROTH_THREADS (default: hardware concurrency, at least 1).
unsigned worker_count();

// Splits [0, n) into a fixed number of chunks that does not depend on the
// worker count, runs `body(begin, end)` for each chunk on the worker pool and
// returns per-chunk results in chunk order. Merging the returned vector in
// order gives results identical for every thread count.
template <class T>
std::vector<T> map_chunks(std::size_t n,
                          const std::function<T(std::size_t, std::size_t)>& body,
                          std::size_t chunks = 64);

// Runs body(i) for i in [0, n) across workers; body must write disjoint state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Reproducible generator: raw 64-bit mt19937_64 output mapped to doubles by
// hand, since std::*_distribution output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Stream for task `index` derived from a master seed.
  static Rng stream(std::uint64_t master, std::uint64_t index);

  std::uint64_t next_u64() { return eng_(); }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double prob) { return uniform() < prob; }
  double normal();

 private:
  std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x);

// C^4 smoothstep: 0 at x<=0, 1 at x>=1, four continuous derivatives.
double smoothstep4(double x);

// Even or one-sided plateau bump built from smoothstep4: 0 outside
// [outer_lo, outer_hi], 1 on [inner_lo, inner_hi], monotone ramps between.
struct SplineBump {
  double outer_lo, inner_lo, inner_hi, outer_hi;
  double operator()(double x) const;
  // Breakpoints where the spline pieces join.
  std::vector<double> knots() const { return {outer_lo, inner_lo, inner_hi, outer_hi}; }
};

// Gauss-Legendre rule on [-1, 1] with n nodes (cached, backed by Boost.Math).
struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const QuadRule& gauss_legendre(unsigned n);

// Integrates f over [a, b] with an n-point Gauss-Legendre rule on `panels`
// equal sub-panels.
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    unsigned n = 16, unsigned panels = 1);

// Tanh-sinh rule on [0, 1], returning nodes s and their complements 1 - s
// computed without cancellation, so endpoint-singular weights stay accurate.
struct TanhSinhRule {
  std::vector<double> s;
  std::vector<double> one_minus_s;
  std::vector<double> weights;
};
TanhSinhRule tanh_sinh_unit(double step, double t_max);

struct IntegralResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod over consecutive breakpoints (sorted, deduplicated,
// clipped to [a, b]). Throws quadrature_failure when the estimated error
// exceeds max(abs_tol, rel_tol * |value|) * 10.
IntegralResult adaptive_integrate(const std::function<double(double)>& f, double a,
                                  double b, std::span<const double> breaks = {},
                                  double rel_tol = 1e-12, double abs_tol = 0.0,
                                  bool throw_on_failure = true);

// Least-squares slope and intercept of y against x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace lproth

#include "lproth/core/numerics_impl.hpp"
