#include "tcspace/tree.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "tcspace/error.hpp"

namespace tcs {

RootedWeightedTree RootedWeightedTree::from_parents(Index root, std::vector<Index> parents,
                                                    std::vector<double> weights) {
  const std::size_t n = parents.size();
  if (n == 0) throw Error(ErrorCode::InvalidTree, "tree has no vertices");
  if (weights.size() != n) throw Error(ErrorCode::InvalidTree, "weights and parents differ in length");
  if (root >= n) throw Error(ErrorCode::InvalidTree, "root out of range", {root});
  for (Index v = 0; v < n; ++v) {
    if (v == root) {
      if (parents[v] != npos) throw Error(ErrorCode::InvalidTree, "root has a parent", {v});
      weights[v] = 0.0;
      continue;
    }
    if (parents[v] >= n || parents[v] == v) throw Error(ErrorCode::InvalidTree, "invalid parent", {v});
    if (!(weights[v] > 0.0) || !std::isfinite(weights[v])) {
      throw Error(ErrorCode::InvalidTree, "edge weights must be positive", {v});
    }
  }
  RootedWeightedTree t;
  t.root_ = root;
  t.parent_ = std::move(parents);
  t.weight_ = std::move(weights);
  t.build();
  return t;
}

RootedWeightedTree RootedWeightedTree::from_edges(std::size_t n, const std::vector<Edge>& edges, Index root) {
  if (n == 0 || edges.size() + 1 != n) throw Error(ErrorCode::InvalidTree, "a tree on n vertices has n-1 edges");
  if (root >= n) throw Error(ErrorCode::InvalidTree, "root out of range", {root});
  std::vector<std::vector<std::pair<Index, double>>> adj(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n || e.u == e.v) throw Error(ErrorCode::InvalidTree, "invalid edge", {e.u, e.v});
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  std::vector<Index> parents(n, npos);
  std::vector<double> weights(n, 0.0);
  std::vector<char> seen(n, 0);
  std::queue<Index> q;
  q.push(root);
  seen[root] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    const Index u = q.front();
    q.pop();
    for (const auto& [v, w] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      ++reached;
      parents[v] = u;
      weights[v] = w;
      q.push(v);
    }
  }
  if (reached != n) throw Error(ErrorCode::InvalidTree, "edges do not span a tree");
  return from_parents(root, std::move(parents), std::move(weights));
}

void RootedWeightedTree::build() {
  const std::size_t n = parent_.size();
  children_.assign(n, {});
  for (Index v = 0; v < n; ++v) {
    if (v != root_) children_[parent_[v]].push_back(v);
  }
  order_.clear();
  order_.reserve(n);
  depth_.assign(n, 0.0);
  hops_.assign(n, 0);
  std::vector<Index> stack{root_};
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    order_.push_back(u);
    for (auto it = children_[u].rbegin(); it != children_[u].rend(); ++it) {
      depth_[*it] = depth_[u] + weight_[*it];
      hops_[*it] = hops_[u] + 1;
      stack.push_back(*it);
    }
  }
  if (order_.size() != n) throw Error(ErrorCode::InvalidTree, "parent structure contains a cycle");
}

Index RootedWeightedTree::lca(Index u, Index v) const {
  while (hops_[u] > hops_[v]) u = parent_[u];
  while (hops_[v] > hops_[u]) v = parent_[v];
  while (u != v) {
    u = parent_[u];
    v = parent_[v];
  }
  return u;
}

double RootedWeightedTree::distance(Index u, Index v) const {
  if (u >= size() || v >= size()) throw Error(ErrorCode::IndexOutOfRange, "vertex out of range", {u, v});
  if (u == v) return 0.0;
  // Summing along the path keeps the value exact for integer weights and
  // avoids cancellation in depth(u) + depth(v) - 2 depth(lca).
  const Index m = lca(u, v);
  double d = 0.0;
  for (Index a = u; a != m; a = parent_[a]) d += weight_[a];
  for (Index b = v; b != m; b = parent_[b]) d += weight_[b];
  return d;
}

std::vector<Index> RootedWeightedTree::path(Index u, Index v) const {
  const Index m = lca(u, v);
  std::vector<Index> left, right;
  for (Index a = u; a != m; a = parent_[a]) left.push_back(a);
  left.push_back(m);
  for (Index b = v; b != m; b = parent_[b]) right.push_back(b);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

RootedWeightedTree RootedWeightedTree::rerooted(Index root) const {
  if (root >= size()) throw Error(ErrorCode::InvalidTree, "root out of range", {root});
  return from_edges(size(), edges(), root);
}

std::vector<Edge> RootedWeightedTree::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  for (Index v = 0; v < size(); ++v) {
    if (v != root_) out.push_back({parent_[v], v, weight_[v]});
  }
  return out;
}

WeightedGraph RootedWeightedTree::graph() const { return WeightedGraph(size(), edges()); }

FiniteMetricSpace RootedWeightedTree::metric() const {
  const std::size_t n = size();
  DistanceMatrix d(n, std::vector<double>(n, 0.0));
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) d[u][v] = d[v][u] = distance(u, v);
  }
  return validate_metric(d, root_);
}

std::vector<double> subtree_masses(const RootedWeightedTree& tree, const ZeroSumMeasure& mu) {
  if (mu.point_count() != tree.size()) throw Error(ErrorCode::SizeMismatch, "measure does not live on the tree");
  std::vector<double> m(tree.size(), 0.0);
  for (const auto& [v, a] : mu.coeffs()) m[v] = a;
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != tree.root()) m[tree.parent(*it)] += m[*it];
  }
  return m;
}

double subtree_mass(const RootedWeightedTree& tree, const ZeroSumMeasure& mu, Index parent, Index child) {
  if (child >= tree.size() || child == tree.root() || tree.parent(child) != parent) {
    throw Error(ErrorCode::EdgeNotInTree, "not an oriented tree edge", {parent, child});
  }
  return subtree_masses(tree, mu)[child];
}

double tree_tc_norm(const RootedWeightedTree& tree, const ZeroSumMeasure& mu) {
  if (mu.is_zero()) return 0.0;
  const auto m = subtree_masses(tree, mu);
  double total = 0.0;
  for (Index v = 0; v < tree.size(); ++v) {
    if (v != tree.root()) total += tree.edge_weight(v) * std::abs(m[v]);
  }
  return total;
}

EdgeVector tree_isometry(const RootedWeightedTree& tree, const ZeroSumMeasure& mu) {
  EdgeVector out;
  if (mu.is_zero()) return out;
  const auto m = subtree_masses(tree, mu);
  for (Index v = 0; v < tree.size(); ++v) {
    if (v != tree.root() && m[v] != 0.0) out.emplace(v, tree.edge_weight(v) * m[v]);
  }
  return out;
}

EdgeVector vertex_embedding(const RootedWeightedTree& tree, Index v) {
  if (v >= tree.size()) throw Error(ErrorCode::IndexOutOfRange, "vertex out of range", {v});
  EdgeVector out;
  for (Index a = v; a != tree.root(); a = tree.parent(a)) out.emplace(a, 1.0);
  return out;
}

double weighted_l1_distance(const RootedWeightedTree& tree, const EdgeVector& a, const EdgeVector& b) {
  EdgeVector diff = a;
  for (const auto& [e, x] : b) diff[e] -= x;
  double total = 0.0;
  for (const auto& [e, x] : diff) total += tree.edge_weight(e) * std::abs(x);
  return total;
}

double l1_norm(const EdgeVector& v) {
  double total = 0.0;
  for (const auto& [e, x] : v) total += std::abs(x);
  return total;
}

}  // namespace tcs
