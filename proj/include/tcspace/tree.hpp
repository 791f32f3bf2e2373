#pragma once

#include <map>
#include <optional>
#include <vector>

#include "tcspace/measure.hpp"
#include "tcspace/metric.hpp"

namespace tcs {

/// A tree with a root v0 and positive edge weights. Every non-root vertex
/// v identifies the oriented edge (parent(v), v), so edges are indexed by
/// their child endpoint e+.
class RootedWeightedTree {
 public:
  static constexpr Index npos = static_cast<Index>(-1);

  RootedWeightedTree() = default;

  /// parents[root] must be npos; weights[v] is the weight of (parents[v], v)
  /// and is ignored at the root. Throws InvalidTree.
  static RootedWeightedTree from_parents(Index root, std::vector<Index> parents, std::vector<double> weights);
  /// Throws InvalidTree unless the edges form a spanning tree on n vertices.
  static RootedWeightedTree from_edges(std::size_t n, const std::vector<Edge>& edges, Index root = 0);

  std::size_t size() const noexcept { return parent_.size(); }
  Index root() const noexcept { return root_; }
  Index parent(Index v) const { return parent_.at(v); }
  double edge_weight(Index v) const { return weight_.at(v); }
  const std::vector<Index>& children(Index v) const { return children_.at(v); }
  const std::vector<Index>& parents() const noexcept { return parent_; }
  const std::vector<double>& weights() const noexcept { return weight_; }
  /// Root first; every vertex after its parent.
  const std::vector<Index>& preorder() const noexcept { return order_; }
  /// Weighted distance from the root.
  double depth(Index v) const { return depth_.at(v); }
  double distance(Index u, Index v) const;
  /// Vertices on the path from u to v, both ends included.
  std::vector<Index> path(Index u, Index v) const;

  RootedWeightedTree rerooted(Index root) const;
  std::vector<Edge> edges() const;
  WeightedGraph graph() const;
  FiniteMetricSpace metric() const;

 private:
  void build();
  Index lca(Index u, Index v) const;

  Index root_ = 0;
  std::vector<Index> parent_;
  std::vector<double> weight_;
  std::vector<std::vector<Index>> children_;
  std::vector<Index> order_;
  std::vector<double> depth_;
  std::vector<std::size_t> hops_;
};

/// mu(T_v) for every vertex v: the mass of the subtree hanging below v.
std::vector<double> subtree_masses(const RootedWeightedTree& tree, const ZeroSumMeasure& mu);

/// mu(T_e) for the oriented edge e = (parent, child). Throws EdgeNotInTree.
double subtree_mass(const RootedWeightedTree& tree, const ZeroSumMeasure& mu, Index parent, Index child);

/// sum_e w_e |mu(T_e)|
double tree_tc_norm(const RootedWeightedTree& tree, const ZeroSumMeasure& mu);

/// Sparse weighted-l1 vector keyed by child vertex e+.
using EdgeVector = std::map<Index, double>;

/// e+ -> w_e mu(T_e); zero coordinates are omitted.
EdgeVector tree_isometry(const RootedWeightedTree& tree, const ZeroSumMeasure& mu);

/// Indicator of the edges on [root, v]; distances use the edge weights.
EdgeVector vertex_embedding(const RootedWeightedTree& tree, Index v);

/// sum_e w_e |a_e - b_e|
double weighted_l1_distance(const RootedWeightedTree& tree, const EdgeVector& a, const EdgeVector& b);

double l1_norm(const EdgeVector& v);

}  // namespace tcs
