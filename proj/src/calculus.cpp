#include "tcspace/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "tcspace/error.hpp"

namespace tcs {

std::shared_ptr<const GeodesicGraph> make_geodesic_graph(WeightedGraph graph, Index base_point) {
  auto g = std::make_shared<GeodesicGraph>();
  g->metric = geodesic_metric(graph, base_point, 1);
  g->graph = std::move(graph);
  return g;
}

VectorField::VectorField(std::shared_ptr<const GeodesicGraph> g, std::vector<double> values)
    : g_(std::move(g)), values_(std::move(values)) {
  if (values_.size() != g_->graph.edge_count()) throw Error(ErrorCode::SizeMismatch, "one value per edge expected");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameters, "vector field value is not finite");
  }
}

VectorField VectorField::zero(std::shared_ptr<const GeodesicGraph> g) {
  const std::size_t m = g->graph.edge_count();
  return VectorField(std::move(g), std::vector<double>(m, 0.0));
}

double VectorField::operator()(Index x, Index y) const {
  const auto e = g_->graph.edge_index(x, y);
  if (!e) throw Error(ErrorCode::NotAWalk, "not an edge", {x, y});
  return x < y ? values_[*e] : -values_[*e];
}

double VectorField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

VectorField gradient(const std::vector<double>& F, std::shared_ptr<const GeodesicGraph> g) {
  if (F.size() != g->graph.vertex_count()) throw Error(ErrorCode::SizeMismatch, "one value per vertex expected");
  std::vector<double> values;
  values.reserve(g->graph.edge_count());
  for (const Edge& e : g->graph.edges()) values.push_back((F[e.v] - F[e.u]) / g->metric(e.u, e.v));
  return VectorField(std::move(g), std::move(values));
}

double line_integral(const VectorField& f, const std::vector<Index>& walk) {
  const auto& d = f.geometry().metric;
  double total = 0.0;
  for (std::size_t j = 0; j < walk.size(); ++j) {
    if (walk[j] >= d.size()) throw Error(ErrorCode::NotAWalk, "walk vertex out of range", {walk[j]});
    if (j > 0) total += f(walk[j - 1], walk[j]) * d(walk[j - 1], walk[j]);
  }
  return total;
}

namespace {

// Potentials along a BFS spanning tree from base, and the largest
// fundamental-cycle integral relative to the potential scale.
std::pair<std::vector<double>, double> tree_potentials(const VectorField& f, Index base) {
  const auto& graph = f.geometry().graph;
  const auto& d = f.geometry().metric;
  const std::size_t n = graph.vertex_count();
  if (base >= n) throw Error(ErrorCode::InvalidBasePoint, "base vertex out of range", {base});
  std::vector<double> P(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<char> tree_edge(graph.edge_count(), 0);
  std::queue<Index> q;
  q.push(base);
  seen[base] = 1;
  while (!q.empty()) {
    const Index u = q.front();
    q.pop();
    for (const Neighbor& nb : graph.neighbors(u)) {
      if (seen[nb.to]) continue;
      seen[nb.to] = 1;
      tree_edge[nb.edge] = 1;
      P[nb.to] = P[u] + f(u, nb.to) * d(u, nb.to);
      q.push(nb.to);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::DisconnectedGraph, "vector field lives on a disconnected graph");
  }
  double scale = 1.0;
  for (double p : P) scale = std::max(scale, std::abs(p));
  double worst = 0.0;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    if (tree_edge[i]) continue;
    const Edge& e = graph.edges()[i];
    worst = std::max(worst, std::abs(P[e.u] + f(e.u, e.v) * d(e.u, e.v) - P[e.v]) / scale);
  }
  return {std::move(P), worst};
}

}  // namespace

bool is_conservative(const VectorField& f, double tol) {
  return tree_potentials(f, f.geometry().metric.base_point()).second <= tol;
}

std::vector<double> integral_operator(const VectorField& f, Index base) {
  auto [P, worst] = tree_potentials(f, base);
  if (worst > 1e-9) throw Error(ErrorCode::NotConservative, "a cycle integral does not vanish");
  return P;
}

std::vector<Index> lexicographic_shortest_path(const GeodesicGraph& g, Index x, Index y) {
  const auto& d = g.metric;
  if (x >= d.size() || y >= d.size()) throw Error(ErrorCode::IndexOutOfRange, "path endpoint out of range", {x, y});
  std::vector<Index> path{x};
  Index c = x;
  while (c != y) {
    const double target = d(c, y);
    Index next = RootedWeightedTree::npos;
    for (const Neighbor& nb : g.graph.neighbors(c)) {  // ascending neighbor index
      if (std::abs(nb.w + d(nb.to, y) - target) <= 1e-12 * (1.0 + target)) {
        next = nb.to;
        break;
      }
    }
    if (next == RootedWeightedTree::npos) throw Error(ErrorCode::PathMismatch, "no shortest-path step found", {c, y});
    path.push_back(next);
    c = next;
  }
  return path;
}

std::vector<double> extend_integral_operator(const VectorField& f, const StochasticTreeEmbedding& emb,
                                             const PathChoice& paths) {
  const auto& geo = f.geometry();
  const auto& d = geo.metric;
  const std::size_t n = d.size();
  if (emb.base.size() != n) throw Error(ErrorCode::EmbeddingNotCanonical, "embedding base differs from graph");
  for (std::size_t i = 0; i < emb.components.size(); ++i) {
    const auto& c = emb.components[i];
    if (c.tree.size() != n) throw Error(ErrorCode::EmbeddingNotCanonical, "component is not bijective", {i});
    std::vector<char> used(n, 0);
    for (Index v : c.vertex_map) {
      if (v >= n || used[v]) throw Error(ErrorCode::EmbeddingNotCanonical, "component is not bijective", {i});
      used[v] = 1;
    }
  }
  // Integral of f over P_{a,b}, a < b, from a to b; shared by all components.
  std::map<std::pair<Index, Index>, double> cache;
  auto edge_integral = [&](Index a, Index b) {
    const bool flip = a > b;
    const std::pair<Index, Index> key = flip ? std::pair{b, a} : std::pair{a, b};
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::vector<Index> p;
      if (const auto s = paths.find(key); s != paths.end()) {
        p = s->second;
        if (p.empty() || p.front() != key.first || p.back() != key.second) {
          throw Error(ErrorCode::PathMismatch, "supplied path has wrong endpoints", {key.first, key.second});
        }
        double len = 0.0;
        for (std::size_t j = 1; j < p.size(); ++j) {
          if (p[j - 1] >= n || p[j] >= n || !geo.graph.edge_index(p[j - 1], p[j])) {
            throw Error(ErrorCode::PathMismatch, "supplied path is not a walk", {key.first, key.second});
          }
          len += d(p[j - 1], p[j]);
        }
        if (std::abs(len - d(key.first, key.second)) > 1e-9 * d(key.first, key.second)) {
          throw Error(ErrorCode::PathMismatch, "supplied path is not a shortest path", {key.first, key.second});
        }
      } else {
        p = lexicographic_shortest_path(geo, key.first, key.second);
      }
      it = cache.emplace(key, line_integral(f, p)).first;
    }
    return flip ? -it->second : it->second;
  };

  std::vector<double> out(n, 0.0);
  const Index base = d.base_point();
  for (std::size_t i = 0; i < emb.components.size(); ++i) {
    const auto& c = emb.components[i];
    std::vector<Index> point_of(n);
    for (Index x = 0; x < n; ++x) point_of[c.vertex_map[x]] = x;
    for (Index v = 0; v < n; ++v) {
      if (v == c.tree.root()) continue;
      const double w = c.tree.edge_weight(v);
      const double dg = d(point_of[c.tree.parent(v)], point_of[v]);
      if (std::abs(w - dg) > 1e-9 * dg) {
        throw Error(ErrorCode::EmbeddingNotCanonical, "tree edge weight differs from d_G", {i, v});
      }
    }
    for (Index x = 0; x < n; ++x) {
      const auto walk = c.tree.path(c.vertex_map[base], c.vertex_map[x]);
      double sum = 0.0;
      for (std::size_t j = 1; j < walk.size(); ++j) sum += edge_integral(point_of[walk[j - 1]], point_of[walk[j]]);
      out[x] += c.p * sum;
    }
  }
  return out;
}

}  // namespace tcs
