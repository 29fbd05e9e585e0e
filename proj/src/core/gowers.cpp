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

#include "lproth/core/gowers.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>

#include "lproth/core/error.hpp"

namespace lproth {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Flat-index addition table on Z_M^d: add[a * n + b] = flat(coords(a) + coords(b)).
std::vector<std::uint32_t> addition_table(int M, int d) {
  std::size_t n = ipow(M, d);
  if (static_cast<double>(n) * static_cast<double>(n) > 1.7e7)
    fail(ErrorCode::budget_exceeded, "brute-force Gowers sum: grid too large");
  std::vector<std::uint32_t> add(n * n);
  std::vector<long> ca(d), cb(d);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t t = a;
    for (int k = 0; k < d; ++k) {
      ca[k] = static_cast<long>(t % M);
      t /= M;
    }
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t s = b, out = 0, stride = 1;
      for (int k = 0; k < d; ++k) {
        long c = static_cast<long>(s % M);
        s /= M;
        out += static_cast<std::size_t>((ca[k] + c) % M) * stride;
        stride *= M;
      }
      add[a * n + b] = static_cast<std::uint32_t>(out);
    }
  }
  return add;
}

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

// In-place forward DFT workspace for Z_M^d; the FFTW planner is not
// thread-safe, execution on distinct buffers is.
class DftWorkspace {
 public:
  DftWorkspace(int M, int d) : n_(ipow(M, d)) {
    buf_ = fftw_alloc_complex(n_);
    std::vector<int> dims(d, M);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft(d, dims.data(), buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  ~DftWorkspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buf_);
  }
  DftWorkspace(const DftWorkspace&) = delete;
  DftWorkspace& operator=(const DftWorkspace&) = delete;

  cplx* data() { return reinterpret_cast<cplx*>(buf_); }
  void execute() { fftw_execute(plan_); }

  // M^{-d} sum |G^|^4 for the data currently in the buffer.
  double fourth_moment() {
    execute();
    CompensatedSum s;
    const cplx* g = data();
    for (std::size_t i = 0; i < n_; ++i) {
      double a = std::norm(g[i]);
      s.add(a * a);
    }
    return s.get() / static_cast<double>(n_);
  }

 private:
  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan plan_ = nullptr;
};

}  // namespace

CyclicGridFunction CyclicGridFunction::zeros(int M, int d, double cell) {
  require(M >= 1 && d >= 1, "cyclic grid: M and d must be positive");
  require(cell > 0.0, "cyclic grid: cell must be positive");
  CyclicGridFunction F;
  F.M = M;
  F.d = d;
  F.cell = cell;
  F.values.assign(ipow(M, d), cplx{0.0, 0.0});
  return F;
}

std::size_t CyclicGridFunction::flat(std::span<const long> idx) const {
  require(static_cast<int>(idx.size()) == d, "cyclic grid: index dimension mismatch");
  std::size_t out = 0, stride = 1;
  for (int k = 0; k < d; ++k) {
    long v = idx[k] % M;
    if (v < 0) v += M;
    out += static_cast<std::size_t>(v) * stride;
    stride *= M;
  }
  return out;
}

std::vector<long> CyclicGridFunction::coords(std::size_t flat_index) const {
  std::vector<long> c(d);
  for (int k = 0; k < d; ++k) {
    c[k] = static_cast<long>(flat_index % M);
    flat_index /= M;
  }
  return c;
}

void CyclicGridFunction::validate() const {
  require(values.size() == ipow(M, d), "cyclic grid: array length must be M^d");
  for (const cplx& v : values)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), "cyclic grid: non-finite value");
}

CyclicGridFunction delta_h(const CyclicGridFunction& F, std::span<const long> h) {
  F.validate();
  CyclicGridFunction out = F;
  std::size_t shift = F.flat(h);
  std::vector<long> hc = F.coords(shift);
  for (std::size_t i = 0; i < F.size(); ++i) {
    std::vector<long> c = F.coords(i);
    for (int k = 0; k < F.d; ++k) c[k] += hc[k];
    out.values[i] = F.values[F.flat(c)] * std::conj(F.values[i]);
  }
  return out;
}

double u2_sum_brute(const CyclicGridFunction& F) {
  F.validate();
  const std::size_t n = F.size();
  auto add = addition_table(F.M, F.d);
  const cplx* v = F.values.data();
  auto parts = map_chunks<ComplexCompensatedSum>(n, [&](std::size_t b, std::size_t e) {
    ComplexCompensatedSum acc;
    for (std::size_t x = b; x < e; ++x)
      for (std::size_t h1 = 0; h1 < n; ++h1) {
        std::size_t x1 = add[x * n + h1];
        cplx a = v[x] * std::conj(v[x1]);
        cplx row{0.0, 0.0};
        for (std::size_t h2 = 0; h2 < n; ++h2)
          row += std::conj(v[add[x * n + h2]]) * v[add[x1 * n + h2]];
        acc.add(a * row);
      }
    return acc;
  });
  ComplexCompensatedSum total;
  for (const auto& p : parts) total.add(p);
  return total.get().real();
}

double u2_sum_spectral(const CyclicGridFunction& F) {
  F.validate();
  DftWorkspace ws(F.M, F.d);
  std::copy(F.values.begin(), F.values.end(), ws.data());
  return ws.fourth_moment();
}

cplx u3_sum_brute(const CyclicGridFunction& F) {
  F.validate();
  const std::size_t n = F.size();
  if (std::pow(static_cast<double>(n), 4) > kU3BruteBudget)
    fail(ErrorCode::budget_exceeded, "u3 brute force: M^{4d} exceeds the tuple budget");
  auto add = addition_table(F.M, F.d);
  const cplx* v = F.values.data();
  auto A = [&](std::size_t a, std::size_t b) { return add[a * n + b]; };
  auto parts = map_chunks<ComplexCompensatedSum>(n, [&](std::size_t b0, std::size_t e0) {
    ComplexCompensatedSum acc;
    for (std::size_t x = b0; x < e0; ++x)
      for (std::size_t y1 = 0; y1 < n; ++y1) {
        std::size_t x1 = A(x, y1);
        cplx a = v[x] * std::conj(v[x1]);
        for (std::size_t y2 = 0; y2 < n; ++y2) {
          std::size_t x2 = A(x, y2), x12 = A(x1, y2);
          cplx b = a * std::conj(v[x2]) * v[x12];
          cplx row{0.0, 0.0};
          for (std::size_t y3 = 0; y3 < n; ++y3)
            row += std::conj(v[A(x, y3)]) * v[A(x1, y3)] * v[A(x2, y3)] *
                   std::conj(v[A(x12, y3)]);
          acc.add(b * row);
        }
      }
    return acc;
  });
  ComplexCompensatedSum total;
  for (const auto& p : parts) total.add(p);
  return total.get();
}

cplx u3_sum_recursive(const CyclicGridFunction& F) {
  F.validate();
  const std::size_t n = F.size();
  const double cost = static_cast<double>(n) * static_cast<double>(n) *
                      std::max(1.0, std::log2(static_cast<double>(n)));
  if (cost > 5e10) fail(ErrorCode::budget_exceeded, "u3 recursive: grid too large");
  auto parts = map_chunks<CompensatedSum>(n, [&](std::size_t b, std::size_t e) {
    DftWorkspace ws(F.M, F.d);
    CompensatedSum acc;
    std::vector<long> c(F.d);
    for (std::size_t h = b; h < e; ++h) {
      std::vector<long> hc = F.coords(h);
      cplx* g = ws.data();
      bool any = false;
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t t = x, shifted = 0, stride = 1;
        for (int k = 0; k < F.d; ++k) {
          long cx = static_cast<long>(t % F.M);
          t /= F.M;
          shifted += static_cast<std::size_t>((cx + hc[k]) % F.M) * stride;
          stride *= F.M;
        }
        g[x] = F.values[shifted] * std::conj(F.values[x]);
        any = any || g[x] != cplx{0.0, 0.0};
      }
      // Delta_h F vanishes identically once h exceeds the support.
      if (any) acc.add(ws.fourth_moment());
    }
    return acc;
  });
  CompensatedSum total;
  for (const auto& p : parts) total.add(p);
  return {total.get(), 0.0};
}

double u2_norm(const CyclicGridFunction& F) {
  double s = u2_sum_spectral(F);
  return std::pow(std::max(0.0, s) * std::pow(F.cell, 3 * F.d), 0.25);
}

double u3_norm(const CyclicGridFunction& F, U3Path path) {
  cplx s = path == U3Path::brute_force ? u3_sum_brute(F) : u3_sum_recursive(F);
  return std::pow(std::max(0.0, s.real()) * std::pow(F.cell, 4 * F.d), 0.125);
}

void write_delta_profile_csv(const CyclicGridFunction& F, std::ostream& out) {
  F.validate();
  out << "h,delta_u2_fourth\n";
  char buf[64];
  for (std::size_t h = 0; h < F.size(); ++h) {
    auto c = F.coords(h);
    double v = u2_sum_spectral(delta_h(F, c));
    std::snprintf(buf, sizeof buf, "%zu,%.17e\n", h, v);
    out << buf;
  }
}

GridSpec kernel_grid(const LpExponent& p, double lambda, int d, int M, double periods) {
  require(M >= 8, "kernel_grid: M must be >= 8");
  require(periods >= 4.0, "kernel_grid: period must cover 4x the support");
  GridSpec g;
  g.M = M;
  g.d = d;
  g.cell = periods * kernel_support_radius(p, lambda) / M;
  return g;
}

double shell_width(const LpExponent& p, double lambda, double w) {
  double lo = std::max(0.0, 1.0 - 2.0 * w);
  return lambda * (std::pow(1.0 + 2.0 * w, 1.0 / p.value()) - std::pow(lo, 1.0 / p.value()));
}

CyclicGridFunction kernel_difference_grid(const LpExponent& p, double lambda, double eta,
                                          double epsilon, const GridSpec& grid,
                                          const MollifierPair& m) {
  KernelParams a{p, grid.d, lambda, eta};
  KernelParams b{p, grid.d, lambda, epsilon};
  a.validate();
  b.validate();
  auto F = CyclicGridFunction::zeros(grid.M, grid.d, grid.cell);
  const double R = kernel_support_radius(p, lambda);
  VecD y(grid.d);
  for (std::size_t i = 0; i < F.size(); ++i) {
    auto c = F.coords(i);
    bool inside = true;
    for (int k = 0; k < grid.d; ++k) {
      y[k] = c[k] * grid.cell;
      inside = inside && y[k] <= R;
    }
    if (!inside) continue;
    F.values[i] = omega_eps_eval(y, a, m) - omega_eps_eval(y, b, m);
  }
  return F;
}

U3Distance u3_kernel_distance(double eta, double epsilon, const LpExponent& p,
                              const GridSpec& grid, const MollifierPair& m, double lambda) {
  require(grid.d == 1 || grid.d == 2, "u3_kernel_distance: d must be 1 or 2");
  require(eta > 0.0 && eta <= 1.0 && epsilon > 0.0 && epsilon <= 1.0,
          "u3_kernel_distance: widths must lie in (0, 1]");
  require(lambda > 0.0, "u3_kernel_distance: lambda must be > 0");
  double width = shell_width(p, lambda, std::min(eta, epsilon));
  require(width >= 8.0 * grid.cell,
          "u3_kernel_distance: grid under-resolves the shell (need 8 cells across)");
  require(grid.M * grid.cell >= 4.0 * kernel_support_radius(p, lambda) * (1.0 - 1e-12),
          "u3_kernel_distance: period must be at least 4x the kernel support");
  U3Distance out;
  out.eta = eta;
  out.epsilon = epsilon;
  out.lambda = lambda;
  out.grid = grid;
  if (eta == epsilon) return out;
  auto F = kernel_difference_grid(p, lambda, eta, epsilon, grid, m);
  out.value = u3_norm(F, U3Path::recursive);
  return out;
}

SplineBump tensor_cutoff(const LpExponent& p) {
  double C = std::pow(3.0, 1.0 / p.value());
  return SplineBump{-2.0 * C, -C, C, 2.0 * C};
}

TensorCheck u3_tensor_check(const LpExponent& p, double t, int d, int M, bool strict_resolution) {
  require(d >= 1 && d <= 2, "u3_tensor_check: d must be 1 or 2");
  require(M >= 8, "u3_tensor_check: M must be >= 8");
  require(std::isfinite(t), "u3_tensor_check: t must be finite");
  SplineBump phi = tensor_cutoff(p);
  const double support = phi.outer_hi;  // phi_+ lives on [0, 2C]
  TensorCheck out;
  out.cell = 4.0 * support / M;
  out.undersampled = std::abs(t) * p.value() * std::pow(3.0, p.value() - 1.0) * out.cell > 0.5;
  if (out.undersampled && strict_resolution)
    fail(ErrorCode::invalid_argument, "u3_tensor_check: oscillation under-sampled at this M");
  auto one_d = CyclicGridFunction::zeros(M, 1, out.cell);
  for (int i = 0; i < M; ++i) {
    double y = i * out.cell;
    one_d.values[i] = phi(y) * std::polar(1.0, t * std::pow(y, p.value()));
  }
  out.rhs = std::pow(u3_norm(one_d), d);
  auto full = CyclicGridFunction::zeros(M, d, out.cell);
  for (std::size_t i = 0; i < full.size(); ++i) {
    auto c = full.coords(i);
    double amp = 1.0, phase = 0.0;
    for (int k = 0; k < d; ++k) {
      double y = c[k] * out.cell;
      amp *= phi(y);
      phase += std::pow(y, p.value());
    }
    full.values[i] = amp * std::polar(1.0, t * phase);
  }
  out.lhs = u3_norm(full);
  out.relative_gap = std::abs(out.lhs - out.rhs) / std::max(out.rhs, 1e-300);
  return out;
}

FormControl u3_form_control_check(const BoxFunction& f, const CyclicGridFunction& g,
                                  double lambda) {
  require(f.d() == 1 && g.d == 1, "u3_form_control_check: d must be 1");
  require(f.n() <= 256 && g.M <= 256 * 4, "u3_form_control_check: grid too large");
  require(std::abs(g.cell - f.h()) <= 1e-12 * f.h(), "u3_form_control_check: grid spacings differ");
  require(lambda > 0.0, "u3_form_control_check: lambda must be > 0");
  f.validate("u3_form_control_check");
  g.validate();
  const long n = f.n();
  ComplexCompensatedSum acc;
  for (int i = 0; i < g.M; ++i) {
    if (g.values[i] == cplx{0.0, 0.0}) continue;
    long j = i < g.M / 2 ? i : i - g.M;
    CompensatedSum row;
    for (long x = 0; x < n; ++x) {
      long a[1] = {x}, b[1] = {x + j}, c[1] = {x + 2 * j};
      row.add(f.node(a) * f.node(b) * f.node(c));
    }
    acc.add(row.get() * g.values[i]);
  }
  FormControl out;
  out.T = std::abs(acc.get()) * f.h() * f.h();
  out.g_u3 = u3_norm(g);
  out.bound = f.N() * std::sqrt(lambda) * out.g_u3;
  out.ratio = out.bound > 0.0 ? out.T / out.bound : 0.0;
  return out;
}

}  // namespace lproth
