#include "tcspace/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "tcspace/error.hpp"
#include "tcspace/parallel.hpp"
#include "tcspace/rng.hpp"

namespace tcs {

double FiniteMetricSpace::distance(Index i, Index j) const {
  if (i >= n_ || j >= n_) {
    throw Error(ErrorCode::IndexOutOfRange, "point index out of range", {i, j});
  }
  return (*this)(i, j);
}

DistanceMatrix FiniteMetricSpace::matrix() const {
  DistanceMatrix m(n_, std::vector<double>(n_));
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
  }
  return m;
}

FiniteMetricSpace FiniteMetricSpace::with_base(Index base) const {
  if (base >= n_) throw Error(ErrorCode::InvalidBasePoint, "base point out of range", {base});
  FiniteMetricSpace copy = *this;
  copy.base_ = base;
  return copy;
}

FiniteMetricSpace validate_metric(const DistanceMatrix& matrix, Index base_point,
                                  std::vector<std::string> names) {
  const std::size_t n = matrix.size();
  for (const auto& row : matrix) {
    if (row.size() != n) throw Error(ErrorCode::NonSquareMatrix, "distance matrix is not square");
  }
  if (n == 0) throw Error(ErrorCode::InvalidSize, "metric space must have at least one point");
  if (base_point >= n) throw Error(ErrorCode::InvalidBasePoint, "base point out of range", {base_point});
  if (!names.empty() && names.size() != n) {
    throw Error(ErrorCode::SizeMismatch, "point name count differs from matrix size");
  }

  double max_entry = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d)) throw Error(ErrorCode::NegativeDistance, "distance is not finite", {i, j});
      if (d < 0.0) throw Error(ErrorCode::NegativeDistance, "negative distance", {i, j});
      if (d != matrix[j][i]) throw Error(ErrorCode::AsymmetricMatrix, "distance matrix is not symmetric", {i, j});
      if (i == j && d != 0.0) throw Error(ErrorCode::NegativeDistance, "nonzero diagonal entry", {i, i});
      if (i != j && d == 0.0) {
        throw Error(ErrorCode::ZeroDistanceDistinctPoints, "distinct points at distance zero", {i, j});
      }
      max_entry = std::max(max_entry, d);
    }
  }

  const double tol = 1e-9 * (1.0 + max_entry);
  for (Index i = 0; i < n; ++i) {
    for (Index k = i + 1; k < n; ++k) {
      for (Index j = 0; j < n; ++j) {
        if (matrix[i][k] > matrix[i][j] + matrix[j][k] + tol) {
          std::ostringstream msg;
          msg << "triangle inequality violated: d(" << i << "," << k << ") > d(" << i << "," << j
              << ") + d(" << j << "," << k << ")";
          throw Error(ErrorCode::TriangleViolation, msg.str(), {i, k, j});
        }
      }
    }
  }

  FiniteMetricSpace space;
  space.n_ = n;
  space.base_ = base_point;
  space.dist_.resize(n * n);
  space.min_ = n > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      space.dist_[i * n + j] = matrix[i][j];
      if (i != j) space.min_ = std::min(space.min_, matrix[i][j]);
    }
  }
  space.max_ = max_entry;
  if (names.empty()) {
    names.reserve(n);
    for (Index i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  space.names_ = std::move(names);
  return space;
}

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), adj_(vertex_count) {
  std::set<std::pair<Index, Index>> seen;
  edges_.reserve(edges.size());
  for (auto e : edges) {
    if (e.u >= n_ || e.v >= n_) throw Error(ErrorCode::InvalidGraph, "edge endpoint out of range", {e.u, e.v});
    if (e.u == e.v) throw Error(ErrorCode::InvalidGraph, "self-loop", {e.u});
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::InvalidGraph, "edge weights must be positive and finite", {e.u, e.v});
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.emplace(e.u, e.v).second) throw Error(ErrorCode::InvalidGraph, "duplicate edge", {e.u, e.v});
    const std::size_t id = edges_.size();
    edges_.push_back(e);
    adj_[e.u].push_back({e.v, e.w, id});
    adj_[e.v].push_back({e.u, e.w, id});
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }
}

std::optional<std::size_t> WeightedGraph::edge_index(Index u, Index v) const {
  if (u >= n_ || v >= n_) return std::nullopt;
  for (const auto& nb : adj_[u]) {
    if (nb.to == v) return nb.edge;
  }
  return std::nullopt;
}

bool WeightedGraph::connected() const {
  if (n_ == 0) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (const auto& nb : adj_[v]) {
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        ++count;
        stack.push_back(nb.to);
      }
    }
  }
  return count == n_;
}

namespace {

std::vector<double> dijkstra(const WeightedGraph& graph, Index source) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (const auto& nb : graph.neighbors(v)) {
      const double cand = d + nb.w;
      if (cand < dist[nb.to]) {
        dist[nb.to] = cand;
        heap.emplace(cand, nb.to);
      }
    }
  }
  return dist;
}

void require_connected(const WeightedGraph& graph) {
  if (graph.vertex_count() == 0) throw Error(ErrorCode::InvalidSize, "graph has no vertices");
  if (!graph.connected()) throw Error(ErrorCode::DisconnectedGraph, "graph is not connected");
}

// Shortest-path sums may differ in the last bit depending on direction.
void symmetrize(DistanceMatrix& m) {
  for (Index i = 0; i < m.size(); ++i) {
    m[i][i] = 0.0;
    for (Index j = i + 1; j < m.size(); ++j) {
      const double d = std::min(m[i][j], m[j][i]);
      m[i][j] = m[j][i] = d;
    }
  }
}

}  // namespace

FiniteMetricSpace geodesic_metric(const WeightedGraph& graph, Index base_point, int threads) {
  require_connected(graph);
  const std::size_t n = graph.vertex_count();
  DistanceMatrix m(n);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
    m[s] = dijkstra(graph, static_cast<Index>(s));
  }
  symmetrize(m);
  return validate_metric(m, base_point);
}

FiniteMetricSpace geodesic_metric_serial(const WeightedGraph& graph, Index base_point) {
  require_connected(graph);
  const std::size_t n = graph.vertex_count();
  DistanceMatrix m(n, std::vector<double>(n, std::numeric_limits<double>::infinity()));
  for (Index i = 0; i < n; ++i) m[i][i] = 0.0;
  for (const auto& e : graph.edges()) {
    m[e.u][e.v] = std::min(m[e.u][e.v], e.w);
    m[e.v][e.u] = m[e.u][e.v];
  }
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (m[i][k] + m[k][j] < m[i][j]) m[i][j] = m[i][k] + m[k][j];
      }
    }
  }
  symmetrize(m);
  return validate_metric(m, base_point);
}

std::optional<FamilySpec> parse_family(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 2) return std::nullopt;

  FamilySpec spec;
  spec.seed = seed;
  const std::string& kind = parts[0];
  if (kind == "cycle") spec.kind = FamilySpec::Kind::Cycle;
  else if (kind == "path") spec.kind = FamilySpec::Kind::Path;
  else if (kind == "star") spec.kind = FamilySpec::Kind::Star;
  else if (kind == "torus") spec.kind = FamilySpec::Kind::Torus;
  else if (kind == "diamond") spec.kind = FamilySpec::Kind::Diamond;
  else if (kind == "random_tree") spec.kind = FamilySpec::Kind::RandomTree;
  else return std::nullopt;

  try {
    std::size_t pos = 0;
    const long long size = std::stoll(parts[1], &pos);
    if (pos != parts[1].size() || size < 0) return std::nullopt;
    spec.size = static_cast<std::size_t>(size);
    if (spec.kind == FamilySpec::Kind::RandomTree && parts.size() == 4) {
      spec.weight_min = std::stod(parts[2]);
      spec.weight_max = std::stod(parts[3]);
    } else if (parts.size() != 2) {
      return std::nullopt;
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return spec;
}

WeightedGraph generate_family(const FamilySpec& spec) {
  const std::size_t n = spec.size;
  std::vector<Edge> edges;
  switch (spec.kind) {
    case FamilySpec::Kind::Cycle: {
      if (n < 3) throw Error(ErrorCode::InvalidSize, "cycle needs at least 3 vertices");
      for (Index i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1.0});
      return WeightedGraph(n, std::move(edges));
    }
    case FamilySpec::Kind::Path: {
      if (n < 1) throw Error(ErrorCode::InvalidSize, "path needs at least 1 vertex");
      for (Index i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
      return WeightedGraph(n, std::move(edges));
    }
    case FamilySpec::Kind::Star: {
      if (n < 1) throw Error(ErrorCode::InvalidSize, "star needs at least 1 vertex");
      for (Index i = 1; i < n; ++i) edges.push_back({0, i, 1.0});
      return WeightedGraph(n, std::move(edges));
    }
    case FamilySpec::Kind::Torus: {
      if (n < 1) throw Error(ErrorCode::InvalidSize, "torus needs n >= 1");
      std::set<std::pair<Index, Index>> seen;
      auto id = [n](Index x, Index y) { return x * n + y; };
      for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y) {
          for (const auto& [a, b] : {std::pair{id(x, y), id((x + 1) % n, y)}, std::pair{id(x, y), id(x, (y + 1) % n)}}) {
            if (a == b) continue;
            if (seen.emplace(std::min(a, b), std::max(a, b)).second) edges.push_back({a, b, 1.0});
          }
        }
      }
      return WeightedGraph(n * n, std::move(edges));
    }
    case FamilySpec::Kind::Diamond: {
      // D_0 is one edge; D_{k+1} replaces every edge {u,v} of D_k by u-a-v, u-b-v.
      std::size_t count = 2;
      std::vector<std::pair<Index, Index>> current{{0, 1}};
      for (std::size_t level = 0; level < n; ++level) {
        std::vector<std::pair<Index, Index>> next;
        next.reserve(current.size() * 4);
        for (const auto& [u, v] : current) {
          const Index a = count++;
          const Index b = count++;
          next.insert(next.end(), {{u, a}, {a, v}, {u, b}, {b, v}});
        }
        current = std::move(next);
      }
      for (const auto& [u, v] : current) edges.push_back({u, v, 1.0});
      return WeightedGraph(count, std::move(edges));
    }
    case FamilySpec::Kind::RandomTree: {
      if (n < 1) throw Error(ErrorCode::InvalidSize, "random tree needs at least 1 vertex");
      if (!(spec.weight_min > 0.0) || spec.weight_max < spec.weight_min) {
        throw Error(ErrorCode::InvalidParameters, "weight range must satisfy 0 < min <= max");
      }
      Rng rng(derive_seed(spec.seed, 0));
      std::uniform_real_distribution<double> weight(spec.weight_min, spec.weight_max);
      for (Index v = 1; v < n; ++v) {
        std::uniform_int_distribution<Index> parent(0, v - 1);
        const Index p = parent(rng);
        const double w = spec.weight_min == spec.weight_max ? spec.weight_min : weight(rng);
        edges.push_back({p, v, w});
      }
      return WeightedGraph(n, std::move(edges));
    }
  }
  throw Error(ErrorCode::InvalidParameters, "unknown graph family");
}

std::vector<Index> ball(const FiniteMetricSpace& space, Index x, double r) {
  if (x >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "ball center out of range", {x});
  if (r < 0.0) throw Error(ErrorCode::InvalidParameters, "ball radius must be nonnegative");
  std::vector<Index> out;
  const auto row = space.row(x);
  for (Index y = 0; y < space.size(); ++y) {
    if (row[y] <= r) out.push_back(y);
  }
  return out;
}

double diameter(const FiniteMetricSpace& space, std::span<const Index> subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "diameter of an empty set");
  double best = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    if (subset[a] >= space.size()) throw Error(ErrorCode::IndexOutOfRange, "subset index out of range", {subset[a]});
    for (std::size_t b = a + 1; b < subset.size(); ++b) best = std::max(best, space(subset[a], subset[b]));
  }
  return best;
}

double diameter(const FiniteMetricSpace& space) { return space.max_distance(); }

}  // namespace tcs
