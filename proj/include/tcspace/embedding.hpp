#pragma once

#include <cstdint>
#include <vector>

#include "tcspace/measure.hpp"
#include "tcspace/metric.hpp"
#include "tcspace/tree.hpp"

namespace tcs {

struct EmbeddingComponent {
  double p = 0.0;
  RootedWeightedTree tree;
  std::vector<Index> vertex_map;  ///< base point -> tree vertex
};

/// A probability distribution over expansive maps f_i : M -> T_i.
struct StochasticTreeEmbedding {
  FiniteMetricSpace base;
  std::vector<EmbeddingComponent> components;
};

/// Throws NotProbability when the weights do not sum to 1 (within 1e-12)
/// and ExpansivenessViolated when some d_i(f_i x, f_i y) < d(x, y) by more
/// than a relative 1e-9.
void check_embedding(const StochasticTreeEmbedding& emb);

/// The n paths obtained from the unit cycle C_n by deleting one edge, each
/// with probability 1/n. Throws InvalidSize for n < 3.
StochasticTreeEmbedding cycle_path_embedding(std::size_t n);

/// n_samples FRT trees restricted to their leaves, relabelled by base
/// points and given the edge weights d(u, v); component i uses the stream
/// make_stream(seed, i) and has probability 1 / n_samples.
StochasticTreeEmbedding bijective_embedding(const FiniteMetricSpace& space, std::size_t n_samples,
                                            std::uint64_t seed, int threads = 0);

/// n x n matrix of sum_i p_i d_i(f_i x, f_i y) / d(x, y); zero diagonal.
std::vector<double> expected_stretch(const StochasticTreeEmbedding& emb);

/// Largest entry of expected_stretch (1 for a one-point space).
double max_expected_stretch(const StochasticTreeEmbedding& emb);

/// Largest expected stretch over the edges of a graph on the base points.
double max_edge_stretch(const StochasticTreeEmbedding& emb, const WeightedGraph& graph);

/// Linear map Phi : F(M) -> l1, coordinate (i, e) = p_i w_e mu_i(T_e) where
/// mu_i is the push-forward of mu to T_i.
class L1EmbeddingMap {
 public:
  explicit L1EmbeddingMap(StochasticTreeEmbedding emb) : emb_(std::move(emb)) {}

  const StochasticTreeEmbedding& embedding() const noexcept { return emb_; }
  /// One sparse vector per component, keyed by child vertex e+.
  std::vector<EdgeVector> apply(const ZeroSumMeasure& mu) const;
  double norm(const ZeroSumMeasure& mu) const;

 private:
  StochasticTreeEmbedding emb_;
};

/// Throws NonBijectiveComponents if a vertex map is not injective or points
/// outside its tree.
L1EmbeddingMap build_l1_map(StochasticTreeEmbedding emb);

struct DistortionRow {
  std::size_t id = 0;
  double tc = 0.0;
  double l1 = 0.0;
  double ratio = 1.0;  ///< 1 for the zero measure
};

struct DistortionReport {
  std::vector<DistortionRow> rows;
  double min_ratio = 1.0;
  double max_ratio = 1.0;
  double mean_ratio = 1.0;
};

DistortionReport measure_distortion(const L1EmbeddingMap& map, const std::vector<ZeroSumMeasure>& measures,
                                    int threads = 0);

}  // namespace tcs
