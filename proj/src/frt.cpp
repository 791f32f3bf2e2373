#include "tcspace/frt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tcspace/error.hpp"
#include "tcspace/parallel.hpp"

namespace tcs {

namespace {

Partition carve(const FiniteMetricSpace& space, double scale, double R, Rng& rng, const Cluster& points) {
  Cluster order = points;
  std::shuffle(order.begin(), order.end(), rng);
  const double r = std::uniform_real_distribution<double>(R / 4.0, R / 2.0)(rng);
  Partition out;
  std::vector<char> taken(points.size(), 0);
  for (Index center : order) {
    Cluster c;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!taken[i] && space(center, points[i]) * scale <= r) {
        taken[i] = 1;
        c.push_back(points[i]);
      }
    }
    if (!c.empty()) out.push_back(std::move(c));
  }
  return out;
}

double frt_scale(const FiniteMetricSpace& space) {
  if (space.size() < 2 || space.min_distance() > 1.0) return 1.0;
  return (1.0 + 1e-6) / space.min_distance();
}

}  // namespace

Partition sample_frt_partition(const FiniteMetricSpace& space, double R, Rng& rng, const Cluster& points) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidParameters, "partition radius must be positive");
  Cluster all = points;
  if (all.empty()) {
    all.resize(space.size());
    std::iota(all.begin(), all.end(), Index{0});
  }
  return carve(space, 1.0, R, rng, all);
}

FrtTree sample_frt_tree(const FiniteMetricSpace& space, Rng& rng) {
  const std::size_t n = space.size();
  FrtTree out;
  auto& h = out.hierarchy;
  h.scale = frt_scale(space);
  const double diam = space.max_distance() * h.scale;
  h.k = 0;
  while (std::ldexp(1.0, h.k) <= diam) ++h.k;

  Cluster all(n);
  std::iota(all.begin(), all.end(), Index{0});
  h.levels.push_back({all});
  std::vector<Index> parents{RootedWeightedTree::npos};
  std::vector<double> weights{0.0};
  std::vector<Index> prev_vertex{0};  // tree vertex of each cluster on the previous level
  for (int j = 1; j <= h.k; ++j) {
    const double R = std::ldexp(1.0, h.k - j);
    Partition level;
    std::vector<Index> vertex;
    const Partition& above = h.levels.back();
    for (std::size_t c = 0; c < above.size(); ++c) {
      for (Cluster& part : carve(space, h.scale, R, rng, above[c])) {
        vertex.push_back(parents.size());
        parents.push_back(prev_vertex[c]);
        weights.push_back(R / h.scale);
        level.push_back(std::move(part));
      }
    }
    h.levels.push_back(std::move(level));
    prev_vertex = std::move(vertex);
  }
  out.leaf_of.assign(n, 0);
  const Partition& last = h.levels.back();
  for (std::size_t c = 0; c < last.size(); ++c) {
    if (last[c].size() != 1) throw Error(ErrorCode::InvalidParameters, "finest level is not all singletons");
    out.leaf_of[last[c].front()] = prev_vertex[c];
  }
  out.tree = RootedWeightedTree::from_parents(0, std::move(parents), std::move(weights));
  return out;
}

namespace {

// Per-sample stretch ratios for pairs u < v, packed in row-major upper
// triangle order.
std::vector<double> sample_ratios(const FiniteMetricSpace& space, std::uint64_t seed, std::size_t sample,
                                  bool& expansive) {
  Rng rng = make_stream(seed, sample);
  const FrtTree t = sample_frt_tree(space, rng);
  const std::size_t n = space.size();
  std::vector<double> out;
  out.reserve(n * (n - 1) / 2);
  expansive = true;
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) {
      const double d = space(u, v);
      const double dt = t.tree.distance(t.leaf_of[u], t.leaf_of[v]);
      if (dt < d * (1.0 - 1e-9)) expansive = false;
      out.push_back(dt / d);
    }
  }
  return out;
}

StretchStats stretch_impl(const FiniteMetricSpace& space, std::size_t n_samples, std::uint64_t seed, int threads,
                          bool parallel) {
  if (n_samples == 0) throw Error(ErrorCode::InvalidParameters, "need at least one sample");
  const std::size_t n = space.size();
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> sum(pairs, 0.0), sum_sq(pairs, 0.0);
  StretchStats s;
  s.samples = n_samples;
  s.min_ratio = std::numeric_limits<double>::infinity();
  constexpr std::size_t block = 64;
  bool all_expansive = true;
  for (std::size_t start = 0; start < n_samples; start += block) {
    const std::size_t count = std::min(block, n_samples - start);
    std::vector<std::vector<double>> ratios(count);
    std::vector<char> ok(count, 1);
    const auto body = [&](std::size_t i) {
      bool e = true;
      ratios[i] = sample_ratios(space, seed, start + i, e);
      ok[i] = e ? 1 : 0;
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
      for (std::size_t i = 0; i < count; ++i) body(i);
    } else {
      for (std::size_t i = 0; i < count; ++i) body(i);
    }
    // Fold in sample order so sums are identical for any thread count.
    for (std::size_t i = 0; i < count; ++i) {
      all_expansive = all_expansive && ok[i];
      for (std::size_t p = 0; p < pairs; ++p) {
        sum[p] += ratios[i][p];
        sum_sq[p] += ratios[i][p] * ratios[i][p];
        s.min_ratio = std::min(s.min_ratio, ratios[i][p]);
      }
    }
  }
  if (!all_expansive) throw Error(ErrorCode::ExpansivenessViolated, "a sampled tree contracts some pair");
  s.mean.assign(n * n, 0.0);
  s.std_error.assign(n * n, 0.0);
  const double m = static_cast<double>(n_samples);
  std::size_t p = 0;
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v, ++p) {
      const double mean = sum[p] / m;
      const double var = n_samples > 1 ? std::max(0.0, (sum_sq[p] - m * mean * mean) / (m - 1.0)) : 0.0;
      s.mean[u * n + v] = s.mean[v * n + u] = mean;
      s.std_error[u * n + v] = s.std_error[v * n + u] = std::sqrt(var / m);
      if (mean > s.max_mean) {
        s.max_mean = mean;
        s.max_u = u;
        s.max_v = v;
      }
    }
  }
  if (pairs == 0) s.min_ratio = 1.0;
  return s;
}

}  // namespace

StretchStats estimate_expected_stretch(const FiniteMetricSpace& space, std::size_t n_samples, std::uint64_t seed,
                                       int threads) {
  return stretch_impl(space, n_samples, seed, threads, true);
}

StretchStats estimate_expected_stretch_serial(const FiniteMetricSpace& space, std::size_t n_samples,
                                              std::uint64_t seed) {
  return stretch_impl(space, n_samples, seed, 1, false);
}

PaddingEstimate estimate_padding(const FiniteMetricSpace& space, double R, double t, std::size_t n_samples,
                                 std::uint64_t seed, int threads) {
  if (n_samples == 0) throw Error(ErrorCode::InvalidParameters, "need at least one sample");
  const std::size_t n = space.size();
  std::vector<std::vector<Index>> balls(n);
  for (Index x = 0; x < n; ++x) balls[x] = ball(space, x, t);
  std::vector<std::vector<char>> hit(n_samples, std::vector<char>(n, 0));
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::size_t s = 0; s < n_samples; ++s) {
    Rng rng = make_stream(seed, s);
    const Partition p = sample_frt_partition(space, R, rng);
    std::vector<std::size_t> owner(n, 0);
    for (std::size_t c = 0; c < p.size(); ++c) {
      for (Index x : p[c]) owner[x] = c;
    }
    for (Index x = 0; x < n; ++x) {
      hit[s][x] = std::all_of(balls[x].begin(), balls[x].end(), [&](Index y) { return owner[y] == owner[x]; });
    }
  }
  PaddingEstimate out;
  out.probability.assign(n, 0.0);
  out.std_error.assign(n, 0.0);
  const double m = static_cast<double>(n_samples);
  for (Index x = 0; x < n; ++x) {
    std::size_t count = 0;
    for (std::size_t s = 0; s < n_samples; ++s) count += static_cast<std::size_t>(hit[s][x]);
    const double p = static_cast<double>(count) / m;
    out.probability[x] = p;
    out.std_error[x] = std::sqrt(p * (1.0 - p) / m);
  }
  return out;
}

}  // namespace tcs
