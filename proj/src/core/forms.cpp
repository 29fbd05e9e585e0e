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

#include "lproth/core/forms.hpp"

#include <algorithm>
#include <cmath>

#include "lproth/core/error.hpp"
#include "lproth/core/numerics.hpp"

namespace lproth {

BoxFunction::BoxFunction(int d, double N, double h) : d_(d), N_(N), h_(h) {
  require(d >= 1 && d <= 3, "BoxFunction: d must lie in 1..3");
  require(std::isfinite(N) && N > 0.0, "BoxFunction: N must be > 0");
  require(std::isfinite(h) && h > 0.0, "BoxFunction: h must be > 0");
  double cells = N / h;
  require(std::abs(cells - std::round(cells)) <= 1e-9 * cells,
          "BoxFunction: N / h must be an integer");
  n_ = static_cast<int>(std::round(cells));
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(n_);
  require(total <= (std::size_t{1} << 28), "BoxFunction: grid too large");
  values_.assign(total, 0.0);
}

BoxFunction BoxFunction::constant(int d, double N, double h, double value) {
  BoxFunction f(d, N, h);
  std::fill(f.values_.begin(), f.values_.end(), value);
  return f;
}

BoxFunction BoxFunction::indicator(int d, double N, double h,
                                   const std::function<bool(std::span<const double>)>& member) {
  BoxFunction f(d, N, h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    VecD x = f.cell_centre(i);
    f.values_[i] = member(x) ? 1.0 : 0.0;
  }
  return f;
}

VecD BoxFunction::cell_centre(std::size_t flat) const {
  VecD x(d_);
  for (int k = 0; k < d_; ++k) {
    x[k] = (static_cast<double>(flat % n_) + 0.5) * h_;
    flat /= n_;
  }
  return x;
}

double BoxFunction::node(std::span<const long> idx) const {
  std::size_t flat = 0, stride = 1;
  for (int k = 0; k < d_; ++k) {
    if (idx[k] < 0 || idx[k] >= n_) return 0.0;
    flat += static_cast<std::size_t>(idx[k]) * stride;
    stride *= n_;
  }
  return values_[flat];
}

double BoxFunction::eval(std::span<const double> x) const {
  long base[3];
  double frac[3];
  for (int k = 0; k < d_; ++k) {
    if (!(x[k] >= 0.0 && x[k] <= N_)) return 0.0;
    double s = std::clamp(x[k] / h_ - 0.5, 0.0, static_cast<double>(n_ - 1));
    long i0 = std::min<long>(static_cast<long>(s), std::max(0, n_ - 2));
    base[k] = i0;
    frac[k] = n_ == 1 ? 0.0 : s - static_cast<double>(i0);
  }
  double acc = 0.0;
  for (int corner = 0; corner < (1 << d_); ++corner) {
    double w = 1.0;
    long idx[3];
    for (int k = 0; k < d_; ++k) {
      bool up = corner >> k & 1;
      w *= up ? frac[k] : 1.0 - frac[k];
      idx[k] = base[k] + (up ? 1 : 0);
    }
    if (w == 0.0) continue;
    acc += w * node(std::span<const long>(idx, d_));
  }
  return acc;
}

double BoxFunction::integral() const {
  CompensatedSum s;
  for (double v : values_) s.add(v);
  return s.get() * std::pow(h_, d_);
}

double BoxFunction::mean() const { return integral() / std::pow(N_, d_); }

double BoxFunction::l4_power() const {
  CompensatedSum s;
  for (double v : values_) s.add(v * v * v * v);
  return s.get() * std::pow(h_, d_);
}

bool BoxFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == values_.front(); });
}

void BoxFunction::validate(const std::string& who) const {
  for (double v : values_)
    require(std::isfinite(v) && v >= -1.0 && v <= 1.0, who + ": values must lie in [-1, 1]");
}

const char* form_kind_name(FormKind kind) {
  switch (kind) {
    case FormKind::n_lambda: return "N_lambda";
    case FormKind::m_lambda: return "M_lambda";
    case FormKind::m_eps_lambda: return "M_eps_lambda";
    case FormKind::e_lambda: return "E_lambda";
  }
  return "?";
}

double CorrelationTable::at(std::span<const long> j) const {
  std::size_t flat = 0, stride = 1;
  const long side = 2 * radius + 1;
  for (int k = 0; k < d; ++k) {
    long v = j[k] + radius;
    if (v < 0 || v >= side) return 0.0;
    flat += static_cast<std::size_t>(v) * stride;
    stride *= static_cast<std::size_t>(side);
  }
  return values[flat];
}

namespace {

// Cells x (per axis) with x, x + j, x + 2j all inside [0, n).
long valid_count(long n, long j) {
  long lo = std::max({0L, -j, -2 * j});
  long hi = std::min({n, n - j, n - 2 * j});
  return std::max(0L, hi - lo);
}

}  // namespace

CorrelationTable correlation_table(const BoxFunction& f, long radius) {
  require(f.d() <= 2, "correlation_table: d must be 1 or 2");
  require(radius >= 0, "correlation_table: radius must be >= 0");
  CorrelationTable t;
  t.d = f.d();
  t.radius = radius;
  const long side = 2 * radius + 1;
  const std::size_t total = f.d() == 1 ? side : static_cast<std::size_t>(side) * side;
  t.values.assign(total, 0.0);
  const long n = f.n();
  const double* v = f.values().data();
  const bool flat_f = f.is_constant();
  const double c3 = flat_f ? std::pow(f.values()[0], 3) : 0.0;
  // T(-j) = T(j) (substitute x -> x + 2j), so only the upper half is summed.
  const std::size_t half = total / 2 + 1;
  auto chunks = map_chunks<std::vector<double>>(half, [&](std::size_t b, std::size_t e) {
    std::vector<double> out;
    out.reserve(e - b);
    for (std::size_t q = b; q < e; ++q) {
      std::size_t flat = total - 1 - q;
      long j0 = static_cast<long>(flat % side) - radius;
      long j1 = f.d() == 2 ? static_cast<long>(flat / side) - radius : 0;
      if (flat_f) {
        double cnt = static_cast<double>(valid_count(n, j0));
        if (f.d() == 2) cnt *= static_cast<double>(valid_count(n, j1));
        out.push_back(c3 * cnt);
        continue;
      }
      CompensatedSum s;
      long lo0 = std::max({0L, -j0, -2 * j0}), hi0 = std::min({n, n - j0, n - 2 * j0});
      if (f.d() == 1) {
        for (long x = lo0; x < hi0; ++x) s.add(v[x] * v[x + j0] * v[x + 2 * j0]);
      } else {
        long lo1 = std::max({0L, -j1, -2 * j1}), hi1 = std::min({n, n - j1, n - 2 * j1});
        long off1 = j0 + j1 * n, off2 = 2 * off1;
        for (long x1 = lo1; x1 < hi1; ++x1) {
          const double* row = v + x1 * n;
          double acc = 0.0;
          for (long x0 = lo0; x0 < hi0; ++x0) acc += row[x0] * row[x0 + off1] * row[x0 + off2];
          s.add(acc);
        }
      }
      out.push_back(s.get());
    }
    return out;
  });
  std::size_t q = 0;
  for (const auto& c : chunks)
    for (double val : c) {
      std::size_t flat = total - 1 - q;
      t.values[flat] = val;
      t.values[total - 1 - flat] = val;
      ++q;
    }
  return t;
}

namespace {

struct LatticeSums {
  std::vector<double> sums;
  std::vector<double> abs_sums;
};

// sum_j h^{2d} T(j) w_k(j h) for several kernels at once.
LatticeSums lattice_sums(const BoxFunction& f, double support,
                         const std::vector<std::function<double(std::span<const double>)>>& w) {
  const double h = f.h();
  const long radius = static_cast<long>(std::ceil(support / h));
  CorrelationTable t = correlation_table(f, radius);
  const long side = 2 * radius + 1;
  const int d = f.d();
  std::vector<CompensatedSum> acc(w.size()), mag(w.size());
  VecD y(d);
  long j[2];
  for (std::size_t flat = 0; flat < t.values.size(); ++flat) {
    double tv = t.values[flat];
    if (tv == 0.0) continue;
    j[0] = static_cast<long>(flat % side) - radius;
    y[0] = j[0] * h;
    if (d == 2) {
      j[1] = static_cast<long>(flat / side) - radius;
      y[1] = j[1] * h;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      double term = tv * w[k](y);
      acc[k].add(term);
      mag[k].add(std::abs(term));
    }
  }
  const double scale = std::pow(h, 2 * d);
  LatticeSums out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.sums.push_back(acc[k].get() * scale);
    out.abs_sums.push_back(mag[k].get() * scale);
  }
  return out;
}

void check_form_args(const BoxFunction& f, double lambda, const std::string& who) {
  require(f.d() == 1 || f.d() == 2, who + ": d must be 1 or 2");
  require(std::isfinite(lambda) && lambda > 0.0, who + ": lambda must be > 0");
  require(lambda <= f.N() / 4.0 * (1.0 + 1e-12), who + ": lambda must be <= N/4");
  f.validate(who);
}

void check_shell_resolution(const BoxFunction& f, const LpExponent& p, double lambda,
                            double epsilon, const std::string& who) {
  require(f.h() <= epsilon * lambda / (8.0 * p.value()) * (1.0 + 1e-12),
          who + ": grid under-resolves the shell (need h <= eps lambda / (8p))");
}

// Rounding-level error bound of a compensated sum of `abs_sum` magnitude.
double rounding_bound(double abs_sum) { return 1e-14 * abs_sum; }

}  // namespace

double lattice_form(const BoxFunction& f, double support,
                    const std::function<double(std::span<const double>)>& weight) {
  return lattice_sums(f, support, {weight}).sums[0];
}

FormValue m_lambda(const BoxFunction& f, const LpExponent& p, double lambda,
                   const MollifierPair& m) {
  check_form_args(f, lambda, "m_lambda");
  KernelParams kp{p, f.d(), lambda, 1.0};
  auto s = lattice_sums(f, kernel_support_radius(p, lambda),
                        {[&](std::span<const double> y) { return omega_eps_eval(y, kp, m); }});
  return {FormKind::m_lambda, lambda, std::nullopt, s.sums[0], rounding_bound(s.abs_sums[0])};
}

FormValue m_eps_lambda(const BoxFunction& f, const LpExponent& p, double lambda,
                       double epsilon, const MollifierPair& m) {
  check_form_args(f, lambda, "m_eps_lambda");
  KernelParams kp{p, f.d(), lambda, epsilon};
  kp.validate();
  if (epsilon < 1.0) check_shell_resolution(f, p, lambda, epsilon, "m_eps_lambda");
  auto s = lattice_sums(f, kernel_support_radius(p, lambda),
                        {[&](std::span<const double> y) { return omega_eps_eval(y, kp, m); }});
  return {FormKind::m_eps_lambda, lambda, epsilon, s.sums[0], rounding_bound(s.abs_sums[0])};
}

FormValue e_lambda(const BoxFunction& f, const LpExponent& p, double lambda, double epsilon,
                   const MollifierPair& m) {
  check_form_args(f, lambda, "e_lambda");
  KernelParams kp{p, f.d(), lambda, epsilon};
  kp.validate();
  if (epsilon < 1.0) check_shell_resolution(f, p, lambda, epsilon, "e_lambda");
  CancelledKernel k(kp, m);
  auto s = lattice_sums(f, kernel_support_radius(p, lambda),
                        {[&](std::span<const double> y) { return k(y); }});
  return {FormKind::e_lambda, lambda, epsilon, s.sums[0], rounding_bound(s.abs_sums[0])};
}

FormTriple form_triple(const BoxFunction& f, const LpExponent& p, double lambda, double epsilon,
                       const MollifierPair& m) {
  check_form_args(f, lambda, "form_triple");
  KernelParams kp{p, f.d(), lambda, epsilon};
  kp.validate();
  if (epsilon < 1.0) check_shell_resolution(f, p, lambda, epsilon, "form_triple");
  KernelParams k1{p, f.d(), lambda, 1.0};
  CancelledKernel k(kp, m);
  auto s = lattice_sums(
      f, kernel_support_radius(p, lambda),
      {[&](std::span<const double> y) { return omega_eps_eval(y, k1, m); },
       [&](std::span<const double> y) { return omega_eps_eval(y, kp, m); },
       [&](std::span<const double> y) { return k(y); }});
  FormTriple out;
  out.c1 = k.c1();
  out.m = {FormKind::m_lambda, lambda, std::nullopt, s.sums[0], rounding_bound(s.abs_sums[0])};
  out.m_eps = {FormKind::m_eps_lambda, lambda, epsilon, s.sums[1], rounding_bound(s.abs_sums[1])};
  out.e = {FormKind::e_lambda, lambda, epsilon, s.sums[2], rounding_bound(s.abs_sums[2])};
  out.decomposition_residual = out.m_eps.value - out.c1 * out.m.value - out.e.value;
  return out;
}

FormValue n_lambda(const BoxFunction& f, double lambda, const SphereQuadrature& quad) {
  require(std::abs(quad.lambda - lambda) <= 1e-12 * lambda,
          "n_lambda: quadrature radius does not match lambda");
  require(quad.d == f.d(), "n_lambda: quadrature dimension does not match f");
  require(lambda > 0.0 && lambda <= f.N() / 4.0 * (1.0 + 1e-12), "n_lambda: need 0 < lambda <= N/4");
  f.validate("n_lambda");
  const int d = f.d();
  const double hd = std::pow(f.h(), d);
  FormValue out{FormKind::n_lambda, lambda, std::nullopt, 0.0, 0.0};
  if (f.is_constant()) {
    // Counting form of the zero-extended constant: per axis, the number of
    // cell centres x with x + y and x + 2y inside [0, N].
    const double c3 = std::pow(f.values()[0], 3);
    CompensatedSum acc, mag;
    for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
      double cnt = 1.0;
      for (int k = 0; k < d; ++k) {
        double y = quad.nodes[q][k];
        double lo = std::max({0.0, -y, -2.0 * y}), hi = std::min({f.N(), f.N() - y, f.N() - 2.0 * y});
        // centres (i + 1/2) h in [lo, hi]
        double first = std::ceil(lo / f.h() - 0.5), last = std::floor(hi / f.h() - 0.5);
        first = std::max(first, 0.0);
        last = std::min(last, static_cast<double>(f.n() - 1));
        cnt *= std::max(0.0, last - first + 1.0);
      }
      double term = c3 * cnt * quad.weights[q] * hd;
      acc.add(term);
      mag.add(std::abs(term));
    }
    out.value = acc.get();
    out.quadrature_error = rounding_bound(mag.get());
    return out;
  }
  struct Partial {
    CompensatedSum acc, mag;
  };
  auto parts = map_chunks<Partial>(f.size(), [&](std::size_t b, std::size_t e) {
    Partial part;
    VecD a(d), c(d);
    for (std::size_t i = b; i < e; ++i) {
      double fx = f[i];
      if (fx == 0.0) continue;
      VecD x = f.cell_centre(i);
      for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
        for (int k = 0; k < d; ++k) {
          a[k] = x[k] + quad.nodes[q][k];
          c[k] = x[k] + 2.0 * quad.nodes[q][k];
        }
        double fa = f.eval(a);
        if (fa == 0.0) continue;
        double term = fx * fa * f.eval(c) * quad.weights[q] * hd;
        part.acc.add(term);
        part.mag.add(std::abs(term));
      }
    }
    return part;
  });
  CompensatedSum acc, mag;
  for (const auto& p : parts) {
    acc.add(p.acc);
    mag.add(p.mag);
  }
  out.value = acc.get();
  out.quadrature_error = rounding_bound(mag.get());
  return out;
}

EnergyReport energy_sum(const BoxFunction& f, const LpExponent& p,
                        std::span<const double> lambdas, double epsilon,
                        const MollifierPair& m) {
  require(!lambdas.empty(), "energy_sum: no radii");
  for (std::size_t j = 0; j + 1 < lambdas.size(); ++j)
    require(lambdas[j + 1] >= 2.0 * lambdas[j], "energy_sum: radii must be lacunary (ratio >= 2)");
  EnergyReport rep;
  CompensatedSum total;
  for (double lambda : lambdas) {
    FormValue e = e_lambda(f, p, lambda, epsilon, m);
    rep.lambdas.push_back(lambda);
    rep.energies.push_back(e.value * e.value);
    total.add(e.value * e.value);
  }
  rep.total = total.get();
  double denom = std::pow(f.N(), f.d()) * f.l4_power();
  rep.ratio = denom > 0.0 ? rep.total / denom : 0.0;
  return rep;
}

PigeonholeResult box_partition_pigeonhole(const BoxFunction& f, double ell) {
  require(ell > 0.0, "box_partition_pigeonhole: ell must be > 0");
  double per = f.N() / ell, sub = ell / f.h();
  require(std::abs(per - std::round(per)) <= 1e-9 * per && std::abs(sub - std::round(sub)) <= 1e-9 * sub,
          "box_partition_pigeonhole: ell must divide N (and be a multiple of h)");
  for (double v : f.values())
    require(v >= 0.0 && v <= 1.0, "box_partition_pigeonhole: values must lie in [0, 1]");
  const long boxes_per_axis = std::lround(per);
  const long cells_per_box = std::lround(sub);
  const int d = f.d();
  std::uint64_t L = 1;
  for (int k = 0; k < d; ++k) L *= static_cast<std::uint64_t>(boxes_per_axis);
  const bool integral = std::all_of(f.values().begin(), f.values().end(),
                                    [](double v) { return v == 0.0 || v == 1.0; });
  std::vector<double> box_sum(L, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t t = i, box = 0, stride = 1;
    for (int k = 0; k < d; ++k) {
      long c = static_cast<long>(t % f.n());
      t /= f.n();
      box += static_cast<std::size_t>(c / cells_per_box) * stride;
      stride *= static_cast<std::size_t>(boxes_per_axis);
    }
    box_sum[box] += f[i];  // exact for indicators (integers below 2^53)
  }
  PigeonholeResult r;
  r.boxes = L;
  const auto ncells = static_cast<std::uint64_t>(f.size());
  if (integral) {
    std::uint64_t S = 0;
    for (double s : box_sum) S += static_cast<std::uint64_t>(s);
    for (double s : box_sum)
      if (2 * static_cast<unsigned __int128>(s) * L >= S) ++r.qualifying;
    r.delta = static_cast<double>(S) / static_cast<double>(ncells);
    r.certificate = 2 * static_cast<unsigned __int128>(r.qualifying) * ncells >=
                    static_cast<unsigned __int128>(S) * L;
  } else {
    CompensatedSum total;
    for (double s : box_sum) total.add(s);
    double S = total.get();
    for (double s : box_sum)
      if (2.0 * s * static_cast<double>(L) >= S) ++r.qualifying;
    r.delta = S / static_cast<double>(ncells);
    r.certificate = 2.0 * static_cast<double>(r.qualifying) * static_cast<double>(ncells) >=
                    S * static_cast<double>(L);
  }
  return r;
}

MainTermReport roth_main_term_experiment(double delta, const LpExponent& p, int d, double N,
                                         double lambda, int trials, const MollifierPair& m,
                                         std::uint64_t seed, double h) {
  require(d == 1 || d == 2, "roth_main_term_experiment: d must be 1 or 2");
  require(delta > 0.0 && delta <= 1.0, "roth_main_term_experiment: delta must lie in (0, 1]");
  require(lambda > 0.0 && lambda <= N / 8.0 * (1.0 + 1e-12),
          "roth_main_term_experiment: lambda must be <= N/8");
  require(trials >= 1, "roth_main_term_experiment: need at least one trial");
  double per_unit = 1.0 / h;
  require(std::abs(per_unit - std::round(per_unit)) < 1e-9, "roth_main_term_experiment: 1/h must be an integer");
  const long units = std::lround(N);
  require(std::abs(N - static_cast<double>(units)) < 1e-9, "roth_main_term_experiment: N must be an integer");
  MainTermReport rep;
  rep.c_omega = kernel_total_mass(KernelParams{p, d, lambda, 1.0}, m).value;
  rep.min_normalized = INFINITY;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(trial));
    std::size_t unit_count = d == 1 ? units : static_cast<std::size_t>(units * units);
    std::vector<char> on(unit_count, 0);
    if (trial % 2 == 0 || delta == 1.0) {
      for (auto& c : on) c = rng.bernoulli(delta) ? 1 : 0;
    } else {
      // stripes along axis 0 with period q, ceil(delta q) of every q columns filled
      long q = 2 + static_cast<long>(rng.below(7));
      long filled = static_cast<long>(std::ceil(delta * q));
      long offset = static_cast<long>(rng.below(static_cast<std::uint64_t>(q)));
      for (std::size_t u = 0; u < unit_count; ++u) {
        long col = static_cast<long>(u % units);
        on[u] = ((col + offset) % q) < filled ? 1 : 0;
      }
    }
    auto f = BoxFunction::indicator(d, N, h, [&](std::span<const double> x) {
      std::size_t u = static_cast<std::size_t>(std::min<long>(static_cast<long>(x[0]), units - 1));
      if (d == 2)
        u += static_cast<std::size_t>(std::min<long>(static_cast<long>(x[1]), units - 1)) * units;
      return on[u] != 0;
    });
    double v = m_lambda(f, p, lambda, m).value / std::pow(N, d);
    rep.normalized.push_back(v);
    rep.min_normalized = std::min(rep.min_normalized, v);
  }
  rep.c_hat = rep.min_normalized;
  rep.all_positive = rep.min_normalized > 0.0;
  return rep;
}

}  // namespace lproth
