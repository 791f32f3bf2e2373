#include "tcspace/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tcspace/error.hpp"
#include "tcspace/frt.hpp"
#include "tcspace/gupta.hpp"
#include "tcspace/parallel.hpp"
#include "tcspace/rng.hpp"
#include "tcspace/transport.hpp"

namespace tcs {

void check_embedding(const StochasticTreeEmbedding& emb) {
  double total = 0.0;
  for (const auto& c : emb.components) {
    if (!(c.p >= 0.0)) throw Error(ErrorCode::NotProbability, "negative component probability");
    total += c.p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::NotProbability, "component probabilities do not sum to 1");
  const std::size_t n = emb.base.size();
  for (std::size_t i = 0; i < emb.components.size(); ++i) {
    const auto& c = emb.components[i];
    if (c.vertex_map.size() != n) throw Error(ErrorCode::SizeMismatch, "vertex map size differs from base size", {i});
    for (Index x = 0; x < n; ++x) {
      for (Index y = x + 1; y < n; ++y) {
        const double d = emb.base(x, y);
        if (c.tree.distance(c.vertex_map[x], c.vertex_map[y]) < d * (1.0 - 1e-9)) {
          throw Error(ErrorCode::ExpansivenessViolated, "component contracts a pair", {i, x, y});
        }
      }
    }
  }
}

StochasticTreeEmbedding cycle_path_embedding(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidSize, "a cycle needs at least 3 vertices", {n});
  FamilySpec spec;
  spec.kind = FamilySpec::Kind::Cycle;
  spec.size = n;
  StochasticTreeEmbedding emb;
  emb.base = geodesic_metric(generate_family(spec), 0, 1);
  std::vector<Index> identity(n);
  for (Index v = 0; v < n; ++v) identity[v] = v;
  for (Index cut = 0; cut < n; ++cut) {
    std::vector<Edge> edges;
    for (Index v = 0; v < n; ++v) {
      if (v != cut) edges.push_back({v, (v + 1) % n, 1.0});
    }
    emb.components.push_back({1.0 / static_cast<double>(n), RootedWeightedTree::from_edges(n, edges, 0), identity});
  }
  return emb;
}

namespace {

RootedWeightedTree bijective_component(const FiniteMetricSpace& space, std::uint64_t seed, std::size_t i) {
  Rng rng = make_stream(seed, i);
  const FrtTree frt = sample_frt_tree(space, rng);
  const GuptaResult g = gupta_restrict(frt.tree, frt.leaf_of);
  std::map<Index, Index> point_of;
  for (Index x = 0; x < space.size(); ++x) point_of[frt.leaf_of[x]] = x;
  std::vector<Edge> edges;
  for (const Edge& e : g.tree.edges()) {
    const Index u = point_of.at(g.vertices[e.u]);
    const Index v = point_of.at(g.vertices[e.v]);
    edges.push_back({u, v, space(u, v)});
  }
  return RootedWeightedTree::from_edges(space.size(), edges, space.base_point());
}

}  // namespace

StochasticTreeEmbedding bijective_embedding(const FiniteMetricSpace& space, std::size_t n_samples,
                                            std::uint64_t seed, int threads) {
  if (n_samples == 0) throw Error(ErrorCode::InvalidParameters, "need at least one sample");
  std::vector<RootedWeightedTree> trees(n_samples);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::size_t i = 0; i < n_samples; ++i) trees[i] = bijective_component(space, seed, i);
  StochasticTreeEmbedding emb;
  emb.base = space;
  std::vector<Index> identity(space.size());
  for (Index v = 0; v < space.size(); ++v) identity[v] = v;
  for (auto& t : trees) emb.components.push_back({1.0 / static_cast<double>(n_samples), std::move(t), identity});
  return emb;
}

std::vector<double> expected_stretch(const StochasticTreeEmbedding& emb) {
  const std::size_t n = emb.base.size();
  std::vector<double> s(n * n, 0.0);
  for (const auto& c : emb.components) {
    for (Index x = 0; x < n; ++x) {
      for (Index y = x + 1; y < n; ++y) {
        s[x * n + y] += c.p * c.tree.distance(c.vertex_map[x], c.vertex_map[y]) / emb.base(x, y);
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) s[y * n + x] = s[x * n + y];
  }
  return s;
}

double max_expected_stretch(const StochasticTreeEmbedding& emb) {
  if (emb.base.size() < 2) return 1.0;
  const auto s = expected_stretch(emb);
  return *std::max_element(s.begin(), s.end());
}

double max_edge_stretch(const StochasticTreeEmbedding& emb, const WeightedGraph& graph) {
  if (graph.vertex_count() != emb.base.size()) throw Error(ErrorCode::SizeMismatch, "graph and embedding differ");
  const std::size_t n = emb.base.size();
  const auto s = expected_stretch(emb);
  double best = graph.edge_count() == 0 ? 1.0 : 0.0;
  for (const Edge& e : graph.edges()) best = std::max(best, s[e.u * n + e.v]);
  return best;
}

std::vector<EdgeVector> L1EmbeddingMap::apply(const ZeroSumMeasure& mu) const {
  if (mu.point_count() != emb_.base.size()) throw Error(ErrorCode::SizeMismatch, "measure does not live on the base");
  std::vector<EdgeVector> out;
  out.reserve(emb_.components.size());
  for (const auto& c : emb_.components) {
    std::map<Index, double> pushed;
    for (const auto& [x, a] : mu.coeffs()) pushed[c.vertex_map[x]] += a;
    EdgeVector v = tree_isometry(c.tree, ZeroSumMeasure(c.tree.size(), std::move(pushed)));
    for (auto& [e, x] : v) x *= c.p;
    out.push_back(std::move(v));
  }
  return out;
}

double L1EmbeddingMap::norm(const ZeroSumMeasure& mu) const {
  double total = 0.0;
  for (const auto& v : apply(mu)) total += l1_norm(v);
  return total;
}

L1EmbeddingMap build_l1_map(StochasticTreeEmbedding emb) {
  for (std::size_t i = 0; i < emb.components.size(); ++i) {
    const auto& c = emb.components[i];
    std::vector<char> used(c.tree.size(), 0);
    if (c.vertex_map.size() != emb.base.size()) {
      throw Error(ErrorCode::NonBijectiveComponents, "vertex map does not cover the base", {i});
    }
    for (Index x = 0; x < c.vertex_map.size(); ++x) {
      const Index v = c.vertex_map[x];
      if (v >= c.tree.size() || used[v]) throw Error(ErrorCode::NonBijectiveComponents, "vertex map is not injective", {i, x});
      used[v] = 1;
    }
  }
  return L1EmbeddingMap(std::move(emb));
}

DistortionReport measure_distortion(const L1EmbeddingMap& map, const std::vector<ZeroSumMeasure>& measures,
                                    int threads) {
  DistortionReport r;
  r.rows.resize(measures.size());
  const FiniteMetricSpace& base = map.embedding().base;
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::size_t i = 0; i < measures.size(); ++i) {
    DistortionRow& row = r.rows[i];
    row.id = i;
    row.tc = tc_norm(base, measures[i]).value;
    row.l1 = map.norm(measures[i]);
    row.ratio = row.tc > 0.0 ? row.l1 / row.tc : 1.0;
  }
  if (measures.empty()) return r;
  r.min_ratio = r.max_ratio = r.rows.front().ratio;
  double sum = 0.0;
  for (const auto& row : r.rows) {
    r.min_ratio = std::min(r.min_ratio, row.ratio);
    r.max_ratio = std::max(r.max_ratio, row.ratio);
    sum += row.ratio;
  }
  r.mean_ratio = sum / static_cast<double>(r.rows.size());
  return r;
}

}  // namespace tcs
