#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "tcspace/embedding.hpp"
#include "tcspace/metric.hpp"

namespace tcs {

/// A connected graph together with its geodesic metric d_G.
struct GeodesicGraph {
  WeightedGraph graph;
  FiniteMetricSpace metric;
};

std::shared_ptr<const GeodesicGraph> make_geodesic_graph(WeightedGraph graph, Index base_point = 0);

/// Antisymmetric function on oriented edges, f(x,y) = -f(y,x). The value
/// for edge {u, v} with u < v is stored as f(u, v).
class VectorField {
 public:
  VectorField(std::shared_ptr<const GeodesicGraph> g, std::vector<double> values);
  static VectorField zero(std::shared_ptr<const GeodesicGraph> g);

  const GeodesicGraph& geometry() const noexcept { return *g_; }
  const std::shared_ptr<const GeodesicGraph>& geometry_ptr() const noexcept { return g_; }
  const std::vector<double>& values() const noexcept { return values_; }
  /// f(x, y); throws NotAWalk if {x, y} is not an edge.
  double operator()(Index x, Index y) const;
  /// max_e |f(e)|
  double sup_norm() const;

 private:
  std::shared_ptr<const GeodesicGraph> g_;
  std::vector<double> values_;
};

/// (F(y) - F(x)) / d_G(x, y) on every edge.
VectorField gradient(const std::vector<double>& F, std::shared_ptr<const GeodesicGraph> g);

/// sum_j f(x_{j-1}, x_j) d_G(x_{j-1}, x_j). Throws NotAWalk.
double line_integral(const VectorField& f, const std::vector<Index>& walk);

/// Integrals over the fundamental cycles of a BFS spanning tree all vanish
/// within tol * max(1, |potential|).
bool is_conservative(const VectorField& f, double tol = 1e-9);

/// F with F(base) = 0 and grad F = f. Throws NotConservative.
std::vector<double> integral_operator(const VectorField& f, Index base);

/// Lexicographically smallest (by vertex sequence) shortest path x -> y.
std::vector<Index> lexicographic_shortest_path(const GeodesicGraph& g, Index x, Index y);

/// Explicit choice of the graph path P_e for tree edges {a, b}, a < b,
/// running from a to b.
using PathChoice = std::map<std::pair<Index, Index>, std::vector<Index>>;

/// I~(f)(x) = sum_i p_i sum_{e in [base, x]_i} int_{P_e} f. Components must
/// be bijective with edge weights equal to d_G (EmbeddingNotCanonical);
/// supplied paths must be walks of length d_G(a, b) (PathMismatch). Edges
/// without a supplied path use lexicographic_shortest_path.
std::vector<double> extend_integral_operator(const VectorField& f, const StochasticTreeEmbedding& emb,
                                             const PathChoice& paths = {});

}  // namespace tcs
