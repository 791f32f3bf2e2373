#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tcspace/calculus.hpp"
#include "tcspace/embedding.hpp"
#include "tcspace/measure.hpp"
#include "tcspace/metric.hpp"
#include "tcspace/tree.hpp"

namespace tcs::io {

using nlohmann::json;

/// Reads and parses a JSON file. Throws ParseError.
json load_json(const std::string& path);

/// {"points": [...], "dist": [[...]], "base": 0}
FiniteMetricSpace metric_from_json(const json& j);
json metric_to_json(const FiniteMetricSpace& space);

/// {"n": int, "edges": [[u, v, w], ...]}
WeightedGraph graph_from_json(const json& j);
json graph_to_json(const WeightedGraph& graph);

/// A metric object, a graph object (geodesic metric), or a string path to
/// a file holding either.
FiniteMetricSpace space_from_json(const json& j);

/// {"space": <path or inline>, "coeffs": {"index": value}}. When `space`
/// is given the "space" member is optional and ignored.
std::pair<FiniteMetricSpace, ZeroSumMeasure> measure_from_json(const json& j,
                                                               const FiniteMetricSpace* space = nullptr);
json measure_to_json(const ZeroSumMeasure& mu);

/// {"n": int, "root": int, "parents": [-1 for the root, ...], "weights": [...]}
RootedWeightedTree tree_from_json(const json& j);
json tree_to_json(const RootedWeightedTree& tree);

/// {"p": [...], "trees": [tree, ...], "maps": [[...], ...]}
json embedding_to_json(const StochasticTreeEmbedding& emb);
StochasticTreeEmbedding embedding_from_json(const json& j, const FiniteMetricSpace& base);

/// {"edges": [[u, v, value], ...]}; value is f(u, v), and a row listed
/// with u > v is stored as -value.
VectorField field_from_json(const json& j, std::shared_ptr<const GeodesicGraph> g);
json field_to_json(const VectorField& f);

/// Sparse weighted-l1 vector as {"e+": coordinate}.
json edge_vector_to_json(const EdgeVector& v);

/// CSV with header row,col,mass (point indices), positive cells only.
std::string plan_to_csv(const TransportPlan& plan);
/// CSV with header measure_id,tc_norm,l1_norm,ratio.
std::string distortion_to_csv(const DistortionReport& report);

/// Round-trip-exact decimal form of a double.
std::string format_double(double x);

}  // namespace tcs::io
