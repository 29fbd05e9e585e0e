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

#include "lproth/core/sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lproth/core/error.hpp"
#include "lproth/core/numerics.hpp"

namespace lproth {

const char* set_kind_name(SetKind kind) {
  switch (kind) {
    case SetKind::bourgain: return "bourgain";
    case SetKind::lattice_cube: return "lattice-cube";
    case SetKind::grid_indicator: return "grid-indicator";
    case SetKind::full_box: return "full-box";
  }
  return "?";
}

bool bourgain_membership(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  double m = std::max(0.0, std::round(s));
  return std::abs(s - m) <= 0.1;
}

bool lattice_cube_membership(std::span<const double> x, double eps0) {
  for (double v : x)
    if (std::abs(v - std::round(v)) > eps0) return false;
  return true;
}

PointSet PointSet::bourgain(int d) {
  require(d >= 1 && d <= 8, "PointSet::bourgain: d must lie in 1..8");
  return PointSet(SetKind::bourgain, d);
}

PointSet PointSet::lattice_cube(int d, double eps0) {
  require(d >= 1 && d <= 8, "PointSet::lattice_cube: d must lie in 1..8");
  require(eps0 > 0.0 && eps0 < 0.5, "PointSet::lattice_cube: eps0 must lie in (0, 0.5)");
  PointSet s(SetKind::lattice_cube, d);
  s.eps0_ = eps0;
  return s;
}

PointSet PointSet::grid_indicator(BoxFunction f) {
  PointSet s(SetKind::grid_indicator, f.d());
  s.extent_ = f.N();
  s.grid_.emplace(std::move(f));
  return s;
}

PointSet PointSet::full_box(int d, double N) {
  require(d >= 1 && d <= 8, "PointSet::full_box: d must lie in 1..8");
  require(std::isfinite(N) && N > 0.0, "PointSet::full_box: N must be > 0");
  PointSet s(SetKind::full_box, d);
  s.extent_ = N;
  return s;
}

bool PointSet::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != d_) return false;
  switch (kind_) {
    case SetKind::bourgain:
      return bourgain_membership(x);
    case SetKind::lattice_cube:
      return lattice_cube_membership(x, eps0_);
    case SetKind::full_box:
      for (double v : x)
        if (!(v >= 0.0 && v <= extent_)) return false;
      return true;
    case SetKind::grid_indicator: {
      const BoxFunction& f = *grid_;
      long idx[3];
      for (int k = 0; k < d_; ++k) {
        if (!(x[k] >= 0.0 && x[k] <= extent_)) return false;
        idx[k] = std::min<long>(static_cast<long>(x[k] / f.h()), f.n() - 1);
      }
      return f.node(std::span<const long>(idx, static_cast<std::size_t>(d_))) >= 0.5;
    }
  }
  return false;
}

MonteCarloDensity estimate_density(const PointSet& A, const ProbeBox& box,
                                   std::uint64_t samples, std::uint64_t seed) {
  require(samples >= 1 && box.hi > box.lo, "estimate_density: bad arguments");
  const int d = A.dim();
  auto hits = map_chunks<std::uint64_t>(samples, [&](std::size_t b, std::size_t e) {
    Rng r = Rng::stream(seed, b);
    VecD x(d);
    std::uint64_t h = 0;
    for (std::size_t i = b; i < e; ++i) {
      for (auto& v : x) v = r.uniform(box.lo, box.hi);
      h += A.contains(x) ? 1 : 0;
    }
    return h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  MonteCarloDensity out;
  out.samples = samples;
  out.value = static_cast<double>(total) / static_cast<double>(samples);
  out.std_error = std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(samples));
  return out;
}

ParallelogramCheck parallelogram_check(std::span<const double> x, std::span<const double> y,
                                       const LpExponent& p) {
  require(x.size() == y.size() && !x.empty(), "parallelogram_check: dimension mismatch");
  require_finite(x, "parallelogram_check");
  require_finite(y, "parallelogram_check");
  VecD a(x.size()), b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a[i] = x[i] + y[i];
    b[i] = x[i] + 2.0 * y[i];
  }
  ParallelogramCheck c;
  c.lhs = 2.0 * lp_power_sum(y, p);
  c.rhs = lp_power_sum(x, p) + lp_power_sum(b, p) - 2.0 * lp_power_sum(a, p);
  c.gap = c.lhs - c.rhs;
  return c;
}

double half_integer_offset(double s) {
  double v = 2.0 * s * s;
  return std::abs(v - std::round(v));
}

bool verify_witness(const PointSet& A, const ProgressionWitness& w) {
  const int d = A.dim();
  if (static_cast<int>(w.x.size()) != d || static_cast<int>(w.y.size()) != d) return false;
  VecD a(d), b(d);
  for (int k = 0; k < d; ++k) {
    a[k] = w.x[k] + w.y[k];
    b[k] = w.x[k] + 2.0 * w.y[k];
  }
  if (!A.contains(w.x) || !A.contains(a) || !A.contains(b)) return false;
  double g = lp_norm(w.y, LpExponent(w.p));
  return std::abs(g - w.target) <= w.tolerance;
}

namespace {

std::vector<VecD> sphere_directions(const LpExponent& p, int d, double lambda) {
  if (d == 1) return {VecD{lambda}, VecD{-lambda}};
  auto mode = d <= 3 ? QuadratureMode::deterministic_graph : QuadratureMode::shell_monte_carlo;
  std::uint64_t n = d == 2 ? 256 : d == 3 ? 40 : 200000;
  SphereQuadrature q = sphere_quadrature(p, d, lambda, n, mode, 0x5eed);
  std::vector<VecD> out;
  out.reserve(q.nodes.size());
  for (auto& y : q.nodes) {
    double s = lp_norm(y, p);
    if (!(s > 0.0)) continue;
    VecD v = y;
    for (auto& c : v) c *= lambda / s;  // project onto S_lambda exactly
    out.push_back(std::move(v));
  }
  require(!out.empty(), "progression_search: no sphere nodes");
  return out;
}

}  // namespace

SearchResult progression_search(const PointSet& A, const LpExponent& p, double lambda,
                                double tol, std::uint64_t budget, std::uint64_t seed,
                                const ProbeBox& box) {
  require(std::isfinite(lambda) && lambda > 0.0, "progression_search: lambda must be > 0");
  require(std::isfinite(tol) && tol > 0.0, "progression_search: tol must be > 0");
  require(budget >= 1 && budget <= 1'000'000'000ULL, "progression_search: budget out of range");
  require(box.hi > box.lo, "progression_search: empty probe box");
  const int d = A.dim();
  const auto dirs = sphere_directions(p, d, lambda);
  // Cube jitter of half-width j has l^p norm at most j d^{1/p}.
  const double jitter = 0.5 * tol / std::pow(static_cast<double>(d), 1.0 / p.value());

  struct Chunk {
    std::optional<ProgressionWitness> w;
    std::uint64_t used = 0;
  };
  auto parts = map_chunks<Chunk>(budget, [&](std::size_t b, std::size_t e) {
    Rng r = Rng::stream(seed, b);
    Chunk c;
    VecD x(d), y(d), a(d), z(d);
    for (std::size_t i = b; i < e; ++i) {
      ++c.used;
      for (auto& v : x) v = r.uniform(box.lo, box.hi);
      if (!A.contains(x)) continue;
      const VecD& n = dirs[r.below(dirs.size())];
      for (int k = 0; k < d; ++k) y[k] = n[k] + r.uniform(-jitter, jitter);
      for (int k = 0; k < d; ++k) a[k] = x[k] + y[k];
      if (!A.contains(a)) continue;
      for (int k = 0; k < d; ++k) z[k] = x[k] + 2.0 * y[k];
      if (!A.contains(z)) continue;
      ProgressionWitness w;
      w.x = x;
      w.y = y;
      w.p = p.value();
      w.gap = lp_norm(y, p);
      w.target = lambda;
      w.tolerance = tol;
      if (!verify_witness(A, w)) continue;
      c.w = std::move(w);
      break;
    }
    return c;
  });
  SearchResult out;
  out.budget = budget;
  for (auto& c : parts) {
    out.proposals += c.used;
    if (!out.witness && c.w) out.witness = std::move(c.w);
  }
  out.exhausted = !out.witness;
  return out;
}

GapSpectrum gap_spectrum_sample(const PointSet& A, const LpExponent& p, std::uint64_t n_samples,
                                const ProbeBox& box, std::uint64_t seed) {
  require(n_samples >= 1 && n_samples <= 10'000'000ULL,
          "gap_spectrum_sample: n_samples must lie in 1..1e7");
  require(box.hi > box.lo, "gap_spectrum_sample: empty probe box");
  const int d = A.dim();
  const double half = 0.5 * (box.hi - box.lo);
  struct Chunk {
    std::vector<double> gaps;
    std::uint64_t used = 0;
  };
  auto parts = map_chunks<Chunk>(n_samples, [&](std::size_t b, std::size_t e) {
    Rng r = Rng::stream(seed, b);
    Chunk c;
    const std::uint64_t want = e - b, cap = 4000 * want;
    VecD x(d), y(d), a(d), z(d);
    auto in_box = [&](const VecD& v) {
      for (double t : v)
        if (!(t >= box.lo && t <= box.hi)) return false;
      return true;
    };
    while (c.gaps.size() < want && c.used < cap) {
      ++c.used;
      for (auto& v : x) v = r.uniform(box.lo, box.hi);
      for (auto& v : y) v = r.uniform(-half, half);
      if (!A.contains(x)) continue;
      for (int k = 0; k < d; ++k) {
        a[k] = x[k] + y[k];
        z[k] = x[k] + 2.0 * y[k];
      }
      if (!in_box(a) || !in_box(z) || !A.contains(a) || !A.contains(z)) continue;
      ProgressionWitness w;
      w.x = x;
      w.y = y;
      w.p = p.value();
      w.gap = lp_norm(y, p);
      w.target = w.gap;
      w.tolerance = 1e-12 * std::max(1.0, w.gap);
      if (!verify_witness(A, w)) continue;
      c.gaps.push_back(w.gap);
    }
    return c;
  });
  GapSpectrum s;
  s.p = p.value();
  s.requested = n_samples;
  for (auto& c : parts) {
    s.proposals += c.used;
    s.gaps.insert(s.gaps.end(), c.gaps.begin(), c.gaps.end());
  }
  if (s.gaps.empty()) return s;
  std::vector<double> sorted = s.gaps;
  std::sort(sorted.begin(), sorted.end());
  s.min_gap = sorted.front();
  s.max_gap = sorted.back();
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    s.max_spectral_gap = std::max(s.max_spectral_gap, sorted[i + 1] - sorted[i]);
  for (double g : s.gaps) s.max_half_integer_offset = std::max(s.max_half_integer_offset, half_integer_offset(g));
  s.histogram.assign(static_cast<std::size_t>(s.max_gap / s.bin_width) + 1, 0);
  for (double g : s.gaps) ++s.histogram[static_cast<std::size_t>(g / s.bin_width)];
  return s;
}

double GapSpectrum::max_hole(double lo, double hi) const {
  require(hi > lo, "GapSpectrum::max_hole: empty window");
  std::vector<double> in{lo, hi};
  for (double g : gaps)
    if (g > lo && g < hi) in.push_back(g);
  std::sort(in.begin(), in.end());
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < in.size(); ++i) h = std::max(h, in[i + 1] - in[i]);
  return h;
}

void GapSpectrum::write_csv(std::ostream& out) const {
  out << "gap,count\n";
  char buf[64];
  for (std::size_t i = 0; i < histogram.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17e,%llu\n", (static_cast<double>(i) + 0.5) * bin_width,
                  static_cast<unsigned long long>(histogram[i]));
    out << buf;
  }
}

LacunarySequence LacunarySequence::from_values(std::vector<double> values) {
  require(!values.empty(), "LacunarySequence: empty");
  LacunarySequence s;
  s.min_ratio = INFINITY;
  for (std::size_t j = 0; j < values.size(); ++j) {
    require(std::isfinite(values[j]) && values[j] > 0.0, "LacunarySequence: values must be > 0");
    if (j + 1 < values.size()) s.min_ratio = std::min(s.min_ratio, values[j + 1] / values[j]);
  }
  require(!(s.min_ratio < 2.0), "LacunarySequence: lambda_{j+1} >= 2 lambda_j violated");
  s.values = std::move(values);
  return s;
}

LacunarySequence lacunary_generate(double lambda1, double ratio, int J) {
  require(std::isfinite(ratio) && ratio >= 2.0, "lacunary_generate: ratio must be >= 2");
  require(std::isfinite(lambda1) && lambda1 > 1.0, "lacunary_generate: lambda1 must be > 1");
  require(J >= 1 && J <= 64, "lacunary_generate: J must lie in 1..64");
  std::vector<double> v(J);
  for (int j = 0; j < J; ++j) v[j] = lambda1 * std::pow(ratio, j);
  return LacunarySequence::from_values(std::move(v));
}

TheoremReport theorem_experiment(double delta, const LpExponent& p, int d, double N,
                                 const LacunarySequence& sequence, int seeds,
                                 std::uint64_t master_seed, std::uint64_t budget_per_search) {
  p.require_nondegenerate("theorem_experiment");
  require(delta > 0.0 && delta <= 1.0, "theorem_experiment: delta must lie in (0, 1]");
  require(d >= 1 && d <= 3, "theorem_experiment: d must lie in 1..3");
  require(seeds >= 1, "theorem_experiment: need at least one seed");
  require(!sequence.values.empty() && sequence.values.back() <= N / 4.0,
          "theorem_experiment: lambda_J must be <= N / 4");
  TheoremReport rep;
  rep.delta = delta;
  rep.p = p.value();
  rep.d = d;
  rep.N = N;
  rep.sequence = sequence;
  const double cell = 1.0;
  rep.tolerance = d * cell;
  const std::size_t J = sequence.values.size();
  for (int s = 0; s < seeds; ++s) {
    Rng r = Rng::stream(master_seed, 2 * static_cast<std::uint64_t>(s));
    BoxFunction f(d, N, cell);
    CompensatedSum mass;
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = r.bernoulli(delta) ? 1.0 : 0.0;
      mass.add(f[i]);
    }
    SeedOutcome out;
    out.seed_index = static_cast<std::uint64_t>(s);
    out.density = mass.get() / static_cast<double>(f.size());
    PointSet A = PointSet::grid_indicator(std::move(f));
    for (std::size_t j = 0; j < J; ++j) {
      std::uint64_t sub = Rng::stream(master_seed, 2 * static_cast<std::uint64_t>(s) + 1).next_u64() + j;
      auto res = progression_search(A, p, sequence.values[j], rep.tolerance, budget_per_search, sub,
                                    ProbeBox{0.0, N});
      if (res.witness) {
        out.realized.push_back(static_cast<int>(j));
        out.witnesses.push_back(*res.witness);
      }
    }
    if (!out.realized.empty()) ++rep.seeds_realizing;
    rep.seeds.push_back(std::move(out));
  }
  rep.all_seeds_realize = rep.seeds_realizing == seeds;
  return rep;
}

ForbiddenGapControl forbidden_gap_control(std::span<const double> lambdas, double tol,
                                          std::uint64_t budget, std::uint64_t seed,
                                          const ProbeBox& box) {
  require(!lambdas.empty(), "forbidden_gap_control: no gaps");
  ForbiddenGapControl c;
  const PointSet A = PointSet::bourgain(2);
  const LpExponent two(2.0);
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    c.lambdas.push_back(lambdas[j]);
    c.searches.push_back(progression_search(A, two, lambdas[j], tol, budget, seed + j, box));
    if (c.searches.back().witness) ++c.realized;
  }
  return c;
}

void write_witnesses_csv(std::span<const ProgressionWitness> ws, std::ostream& out) {
  out << "x,y,p,gap,target,tolerance\n";
  char buf[64];
  auto vec = [&](const VecD& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.17e", i ? " " : "", v[i]);
      s += buf;
    }
    return s;
  };
  for (const auto& w : ws) {
    out << vec(w.x) << ',' << vec(w.y);
    std::snprintf(buf, sizeof buf, ",%.17e", w.p);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17e", w.gap);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17e", w.target);
    out << buf;
    std::snprintf(buf, sizeof buf, ",%.17e\n", w.tolerance);
    out << buf;
  }
}

}  // namespace lproth
