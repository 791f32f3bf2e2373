#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcs {

using Index = std::size_t;
using DistanceMatrix = std::vector<std::vector<double>>;

/// A finite metric space (M, d) with a distinguished base point 0.
///
/// Instances are only produced by validate_metric() (or by operations that
/// route through it), so every instance satisfies the metric axioms up to
/// the documented triangle tolerance. Immutable after construction.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  std::size_t size() const noexcept { return n_; }
  Index base_point() const noexcept { return base_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  double operator()(Index i, Index j) const noexcept { return dist_[i * n_ + j]; }
  double distance(Index i, Index j) const;

  std::span<const double> row(Index i) const noexcept { return {dist_.data() + i * n_, n_}; }
  DistanceMatrix matrix() const;

  /// Smallest distance between distinct points (0 for a one-point space).
  double min_distance() const noexcept { return min_; }
  double max_distance() const noexcept { return max_; }

  /// Same points and distances, different base point.
  FiniteMetricSpace with_base(Index base) const;

 private:
  friend FiniteMetricSpace validate_metric(const DistanceMatrix&, Index, std::vector<std::string>);

  std::size_t n_ = 0;
  std::vector<double> dist_;
  Index base_ = 0;
  std::vector<std::string> names_;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Checks squareness, symmetry, positivity and the triangle inequality
/// (additive tolerance 1e-9 * (1 + max entry)). Names default to "0".."n-1".
FiniteMetricSpace validate_metric(const DistanceMatrix& matrix, Index base_point = 0,
                                  std::vector<std::string> names = {});

struct Edge {
  Index u = 0;
  Index v = 0;
  double w = 1.0;
};

struct Neighbor {
  Index to;
  double w;
  std::size_t edge;
};

/// Undirected simple graph with strictly positive edge weights. Edges are
/// stored normalized so that u < v; edge indices follow insertion order.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Neighbor>& neighbors(Index v) const { return adj_.at(v); }

  std::optional<std::size_t> edge_index(Index u, Index v) const;
  bool connected() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

/// All-pairs shortest paths: one Dijkstra per source, sources distributed
/// over OpenMP threads (threads <= 0 uses the runtime default).
FiniteMetricSpace geodesic_metric(const WeightedGraph& graph, Index base_point = 0, int threads = 0);

/// Floyd-Warshall reference for geodesic_metric; kept for cross-checking.
FiniteMetricSpace geodesic_metric_serial(const WeightedGraph& graph, Index base_point = 0);

struct FamilySpec {
  enum class Kind { Cycle, Path, Star, Torus, Diamond, RandomTree };
  Kind kind = Kind::Cycle;
  std::size_t size = 3;  ///< n, or the level for diamonds
  std::uint64_t seed = 0;
  double weight_min = 1.0;
  double weight_max = 1.0;
};

/// Parses "cycle:8", "path:5", "star:6", "torus:4", "diamond:2",
/// "random_tree:20[:wmin:wmax]". Returns nullopt if the family is unknown.
std::optional<FamilySpec> parse_family(const std::string& text, std::uint64_t seed = 0);

WeightedGraph generate_family(const FamilySpec& spec);

/// Closed ball {y : d(x,y) <= r}, ascending indices.
std::vector<Index> ball(const FiniteMetricSpace& space, Index x, double r);

double diameter(const FiniteMetricSpace& space, std::span<const Index> subset);
double diameter(const FiniteMetricSpace& space);

}  // namespace tcs
