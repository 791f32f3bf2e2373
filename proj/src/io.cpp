#include "tcspace/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tcspace/error.hpp"

namespace tcs::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_error(std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

FiniteMetricSpace metric_from_json(const json& j) {
  const auto dist = get<DistanceMatrix>(j, "dist");
  const Index base = j.contains("base") ? get<Index>(j, "base") : 0;
  std::vector<std::string> names;
  if (j.contains("points")) {
    for (const auto& p : j.at("points")) names.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  }
  return validate_metric(dist, base, std::move(names));
}

json metric_to_json(const FiniteMetricSpace& space) {
  return {{"points", space.names()}, {"dist", space.matrix()}, {"base", space.base_point()}};
}

WeightedGraph graph_from_json(const json& j) {
  const auto n = get<std::size_t>(j, "n");
  std::vector<Edge> edges;
  for (const auto& e : get<std::vector<json>>(j, "edges")) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) parse_error("edge must be [u, v] or [u, v, w]");
    try {
      edges.push_back({e[0].get<Index>(), e[1].get<Index>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    } catch (const json::exception& ex) {
      parse_error(std::string("bad edge: ") + ex.what());
    }
  }
  return WeightedGraph(n, std::move(edges));
}

json graph_to_json(const WeightedGraph& graph) {
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v, e.w});
  return {{"n", graph.vertex_count()}, {"edges", edges}};
}

FiniteMetricSpace space_from_json(const json& j) {
  if (j.is_string()) return space_from_json(load_json(j.get<std::string>()));
  if (j.is_object() && j.contains("dist")) return metric_from_json(j);
  if (j.is_object() && j.contains("edges")) {
    const Index base = j.contains("base") ? get<Index>(j, "base") : 0;
    return geodesic_metric(graph_from_json(j), base);
  }
  parse_error("expected a metric, a graph, or a file path");
}

std::pair<FiniteMetricSpace, ZeroSumMeasure> measure_from_json(const json& j, const FiniteMetricSpace* space) {
  FiniteMetricSpace s = space ? *space : space_from_json(j.contains("space") ? j.at("space") : json());
  std::map<Index, double> coeffs;
  const auto raw = get<std::map<std::string, double>>(j, "coeffs");
  for (const auto& [key, value] : raw) {
    Index idx = 0;
    const auto res = std::from_chars(key.data(), key.data() + key.size(), idx);
    if (res.ec != std::errc() || res.ptr != key.data() + key.size()) parse_error("measure key is not an index: " + key);
    coeffs[idx] += value;
  }
  ZeroSumMeasure mu(s.size(), std::move(coeffs));
  return {std::move(s), std::move(mu)};
}

json measure_to_json(const ZeroSumMeasure& mu) {
  json c = json::object();
  for (const auto& [i, a] : mu.coeffs()) c[std::to_string(i)] = a;
  return {{"coeffs", c}};
}

RootedWeightedTree tree_from_json(const json& j) {
  const auto n = get<std::size_t>(j, "n");
  const auto root = j.contains("root") ? get<Index>(j, "root") : 0;
  const auto parents = get<std::vector<long long>>(j, "parents");
  const auto weights = get<std::vector<double>>(j, "weights");
  if (parents.size() != n || weights.size() != n) parse_error("parents and weights need n entries");
  std::vector<Index> p(n);
  for (Index v = 0; v < n; ++v) p[v] = parents[v] < 0 ? RootedWeightedTree::npos : static_cast<Index>(parents[v]);
  return RootedWeightedTree::from_parents(root, std::move(p), weights);
}

json tree_to_json(const RootedWeightedTree& tree) {
  json parents = json::array();
  for (Index v = 0; v < tree.size(); ++v) {
    if (v == tree.root()) parents.push_back(-1);
    else parents.push_back(tree.parent(v));
  }
  return {{"n", tree.size()}, {"root", tree.root()}, {"parents", parents}, {"weights", tree.weights()}};
}

json embedding_to_json(const StochasticTreeEmbedding& emb) {
  json p = json::array(), trees = json::array(), maps = json::array();
  for (const auto& c : emb.components) {
    p.push_back(c.p);
    trees.push_back(tree_to_json(c.tree));
    maps.push_back(c.vertex_map);
  }
  return {{"p", p}, {"trees", trees}, {"maps", maps}};
}

StochasticTreeEmbedding embedding_from_json(const json& j, const FiniteMetricSpace& base) {
  const auto p = get<std::vector<double>>(j, "p");
  const auto trees = get<std::vector<json>>(j, "trees");
  const auto maps = get<std::vector<std::vector<Index>>>(j, "maps");
  if (trees.size() != p.size() || maps.size() != p.size()) parse_error("p, trees and maps differ in length");
  StochasticTreeEmbedding emb;
  emb.base = base;
  for (std::size_t i = 0; i < p.size(); ++i) emb.components.push_back({p[i], tree_from_json(trees[i]), maps[i]});
  return emb;
}

VectorField field_from_json(const json& j, std::shared_ptr<const GeodesicGraph> g) {
  std::vector<double> values(g->graph.edge_count(), 0.0);
  for (const auto& e : get<std::vector<json>>(j, "edges")) {
    if (!e.is_array() || e.size() != 3) parse_error("field row must be [u, v, value]");
    Index u = 0, v = 0;
    double x = 0.0;
    try {
      u = e[0].get<Index>();
      v = e[1].get<Index>();
      x = e[2].get<double>();
    } catch (const json::exception& ex) {
      parse_error(std::string("bad field row: ") + ex.what());
    }
    const auto idx = g->graph.edge_index(u, v);
    if (!idx) throw Error(ErrorCode::NotAWalk, "field row is not an edge", {u, v});
    values[*idx] = u < v ? x : -x;
  }
  return VectorField(std::move(g), std::move(values));
}

json field_to_json(const VectorField& f) {
  json rows = json::array();
  const auto& edges = f.geometry().graph.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) rows.push_back({edges[i].u, edges[i].v, f.values()[i]});
  return {{"edges", rows}};
}

json edge_vector_to_json(const EdgeVector& v) {
  json out = json::object();
  for (const auto& [e, x] : v) out[std::to_string(e)] = x;
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string plan_to_csv(const TransportPlan& plan) {
  std::ostringstream out;
  out << "row,col,mass\n";
  for (std::size_t r = 0; r < plan.rows.size(); ++r) {
    for (std::size_t c = 0; c < plan.cols.size(); ++c) {
      if (plan.at(r, c) > 0.0) out << plan.rows[r] << ',' << plan.cols[c] << ',' << format_double(plan.at(r, c)) << '\n';
    }
  }
  return out.str();
}

std::string distortion_to_csv(const DistortionReport& report) {
  std::ostringstream out;
  out << "measure_id,tc_norm,l1_norm,ratio\n";
  for (const auto& r : report.rows) {
    out << r.id << ',' << format_double(r.tc) << ',' << format_double(r.l1) << ',' << format_double(r.ratio) << '\n';
  }
  return out.str();
}

}  // namespace tcs::io
