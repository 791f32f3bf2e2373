#pragma once

#include <cstdint>
#include <vector>

#include "tcspace/metric.hpp"
#include "tcspace/rng.hpp"
#include "tcspace/tree.hpp"

namespace tcs {

using Cluster = std::vector<Index>;
using Partition = std::vector<Cluster>;

/// Random ball carving of `points` (all points when empty): a uniform
/// permutation pi and a radius r uniform in [R/4, R/2); cluster i is
/// B_r(pi(i)) minus the earlier clusters. Every cluster has diameter < R.
Partition sample_frt_partition(const FiniteMetricSpace& space, double R, Rng& rng, const Cluster& points = {});

struct HierarchicalPartition {
  int k = 0;            ///< least integer with diam < 2^k after scaling
  double scale = 1.0;   ///< distances are multiplied by this before carving
  std::vector<Partition> levels;  ///< levels[0] = {M}, levels[k] = singletons
};

struct FrtTree {
  HierarchicalPartition hierarchy;
  /// Vertices are (level, cluster) pairs in level order; vertex 0 is (0, M).
  RootedWeightedTree tree;
  std::vector<Index> leaf_of;  ///< point x -> vertex of (k, {x})
};

/// Distances are scaled by (1 + 1e-6) / min distance when the minimum is
/// not already above 1. Level j clusters are carved from their parents
/// with R = 2^(k-j); the edge into a level j vertex weighs 2^(k-j) / scale.
FrtTree sample_frt_tree(const FiniteMetricSpace& space, Rng& rng);

struct StretchStats {
  std::size_t samples = 0;
  std::vector<double> mean;    ///< n x n, row-major; mean of d_T / d
  std::vector<double> std_error;  ///< n x n, standard error of the mean
  double max_mean = 0.0;
  Index max_u = 0, max_v = 0;
  double min_ratio = 0.0;      ///< smallest single-sample stretch seen
};

/// Samples n_samples FRT trees, sample i drawing from make_stream(seed, i).
/// Throws ExpansivenessViolated if any sampled tree shrinks a pair by more
/// than a relative 1e-9. Results do not depend on the thread count.
StretchStats estimate_expected_stretch(const FiniteMetricSpace& space, std::size_t n_samples, std::uint64_t seed,
                                       int threads = 0);
/// Single-threaded reference with identical output.
StretchStats estimate_expected_stretch_serial(const FiniteMetricSpace& space, std::size_t n_samples,
                                              std::uint64_t seed);

struct PaddingEstimate {
  std::vector<double> probability;  ///< per point x: P(B_t(x) inside the cluster of x)
  std::vector<double> std_error;
};

/// Monte Carlo estimate over sample_frt_partition(space, R) draws.
PaddingEstimate estimate_padding(const FiniteMetricSpace& space, double R, double t, std::size_t n_samples,
                                 std::uint64_t seed, int threads = 0);

}  // namespace tcs
