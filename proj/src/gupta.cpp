#include "tcspace/gupta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "tcspace/error.hpp"

namespace tcs {

namespace {

constexpr Index none = RootedWeightedTree::npos;

struct Distances {
  std::map<Index, double> dist;
  std::map<Index, Index> parent;
};

// Mutable forest on kept vertices, their clones and Steiner points.
// Subproblems always live in disjoint components.
class Restrictor {
 public:
  Restrictor(const RootedWeightedTree& tree, const std::vector<char>& keep, bool track)
      : adj_(tree.size()), kept_(keep), label_(tree.size()), track_(track) {
    for (Index v = 0; v < tree.size(); ++v) label_[v] = v;
    for (const Edge& e : tree.edges()) add_edge(e.u, e.v, e.w);
  }

  void general(Index s) {
    const std::vector<Index> rest = prune(component(s));
    Index internal = none;
    for (Index v : rest) {
      if (kept_[v] && adj_[v].size() >= 2) {
        internal = v;
        break;
      }
    }
    if (internal != none) {
      // Every branch at a kept internal vertex becomes its own tree, glued
      // back at that vertex through clones carrying the same label.
      std::vector<std::pair<Index, double>> branches(adj_[internal].begin(), adj_[internal].end());
      std::vector<Index> roots{internal};
      for (std::size_t i = 1; i < branches.size(); ++i) {
        const Index clone = add_node(true, label_[internal]);
        remove_edge(internal, branches[i].first);
        add_edge(clone, branches[i].first, branches[i].second);
        roots.push_back(clone);
      }
      for (Index r : roots) general(r);
      return;
    }
    const auto steiner = std::find_if(rest.begin(), rest.end(), [&](Index v) { return !kept_[v]; });
    if (steiner == rest.end()) {
      for (Index u : rest) {
        for (const auto& [v, w] : adj_[u]) {
          if (u < v) out_.push_back({u, v, w});
        }
      }
      return;
    }
    solve(*steiner, none);
  }

  // All kept vertices of the component are leaves. Returns v0.
  Index solve(Index start, Index forced) {
    const Distances from_start = distances(start);
    const std::vector<Index> rest = prune(component(start));
    Index x0 = rest.front();
    for (Index v : rest) {
      if (from_start.dist.at(v) < from_start.dist.at(x0)) x0 = v;
    }
    if (rest.size() == 1) return x0;
    if (kept_[x0]) throw Error(ErrorCode::InvalidTree, "restriction reached a kept vertex of degree one");

    const Distances dx = distances(x0);
    double r0 = std::numeric_limits<double>::infinity();
    Index v0 = none;
    for (Index v : rest) {
      if (kept_[v] && dx.dist.at(v) < r0) {
        r0 = dx.dist.at(v);
        v0 = v;
      }
    }
    if (forced != none) v0 = forced;
    const double half = r0 / 2.0;

    struct Part {
      Index x;          // x_j
      Index b;          // b_j
      Distances inner;  // distances from x_j inside T_j
    };
    std::vector<Part> parts;
    for (Index b : rest) {  // ascending, so the cut edges are ordered by child index
      if (b == x0) continue;
      const Index a = dx.parent.at(b);
      if (!(dx.dist.at(a) < half && half <= dx.dist.at(b))) continue;
      parts.push_back({none, b, {}});
    }
    for (Part& p : parts) {
      remove_edge(dx.parent.at(p.b), p.b);
      const double gap = dx.dist.at(p.b) - half;
      if (std::abs(gap) <= 1e-12 * std::max(1.0, r0)) {
        p.x = p.b;
      } else {
        p.x = add_node(false, none);
        add_edge(p.x, p.b, gap);
      }
    }
    Index v0_branch = v0;
    while (std::none_of(parts.begin(), parts.end(), [&](const Part& p) { return p.b == v0_branch; })) {
      v0_branch = dx.parent.at(v0_branch);
    }

    const std::size_t first_edge = out_.size();
    for (Part& p : parts) {
      p.inner = distances(p.x);
      const Index vj = solve(p.x, p.b == v0_branch ? v0 : none);
      if (p.b != v0_branch) out_.push_back({v0, vj, p.inner.dist.at(vj)});
    }
    if (track_) record_slack(rest, dx, r0, v0, first_edge);
    return v0;
  }

  const std::vector<Edge>& edges() const { return out_; }
  Index label(Index v) const { return label_[v]; }
  double slack() const { return slack_; }

 private:
  Index add_node(bool kept, Index label) {
    adj_.emplace_back();
    kept_.push_back(kept ? 1 : 0);
    label_.push_back(label);
    return adj_.size() - 1;
  }
  void add_edge(Index a, Index b, double w) {
    adj_[a][b] = w;
    adj_[b][a] = w;
  }
  void remove_edge(Index a, Index b) {
    adj_[a].erase(b);
    adj_[b].erase(a);
  }

  std::vector<Index> component(Index s) const {
    std::vector<Index> out{s};
    std::set<Index> seen{s};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const auto& [v, w] : adj_[out[i]]) {
        if (seen.insert(v).second) out.push_back(v);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Distances distances(Index s) const {
    Distances d;
    d.dist[s] = 0.0;
    d.parent[s] = none;
    std::vector<Index> stack{s};
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : adj_[u]) {
        if (d.dist.count(v)) continue;
        d.dist[v] = d.dist[u] + w;
        d.parent[v] = u;
        stack.push_back(v);
      }
    }
    return d;
  }

  // Removes non-kept vertices of degree <= 1 until none is left.
  std::vector<Index> prune(const std::vector<Index>& comp) {
    std::vector<Index> queue;
    for (Index v : comp) {
      if (!kept_[v] && adj_[v].size() <= 1) queue.push_back(v);
    }
    std::set<Index> removed;
    while (!queue.empty()) {
      const Index v = queue.back();
      queue.pop_back();
      if (removed.count(v) || kept_[v] || adj_[v].size() > 1) continue;
      removed.insert(v);
      if (!adj_[v].empty()) {
        const Index u = adj_[v].begin()->first;
        remove_edge(u, v);
        if (!kept_[u] && adj_[u].size() <= 1) queue.push_back(u);
      }
    }
    std::vector<Index> rest;
    for (Index v : comp) {
      if (!removed.count(v)) rest.push_back(v);
    }
    return rest;
  }

  void record_slack(const std::vector<Index>& rest, const Distances& dx, double r0, Index v0, std::size_t first_edge) {
    std::map<Index, std::vector<std::pair<Index, double>>> local;
    for (std::size_t i = first_edge; i < out_.size(); ++i) {
      local[out_[i].u].emplace_back(out_[i].v, out_[i].w);
      local[out_[i].v].emplace_back(out_[i].u, out_[i].w);
    }
    std::map<Index, double> dt{{v0, 0.0}};
    std::vector<Index> stack{v0};
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      for (const auto& [v, w] : local[u]) {
        if (dt.emplace(v, dt[u] + w).second) stack.push_back(v);
      }
    }
    for (Index x : rest) {
      if (!kept_[x]) continue;
      const auto it = dt.find(x);
      const double dtx = it == dt.end() ? std::numeric_limits<double>::infinity() : it->second;
      slack_ = std::min(slack_, 2.0 * dx.dist.at(x) - r0 - dtx);
    }
  }

  std::vector<std::map<Index, double>> adj_;
  std::vector<char> kept_;
  std::vector<Index> label_;
  std::vector<Edge> out_;
  bool track_;
  double slack_ = std::numeric_limits<double>::infinity();
};

}  // namespace

GuptaResult gupta_restrict(const RootedWeightedTree& tree, const std::vector<Index>& keep, bool track_invariant) {
  if (keep.empty()) throw Error(ErrorCode::EmptyKeepSet, "keep set is empty");
  std::vector<char> flags(tree.size(), 0);
  for (Index v : keep) {
    if (v >= tree.size()) throw Error(ErrorCode::IndexOutOfRange, "kept vertex out of range", {v});
    flags[v] = 1;
  }
  GuptaResult result;
  for (Index v = 0; v < tree.size(); ++v) {
    if (flags[v]) result.vertices.push_back(v);
  }
  Restrictor r(tree, flags, track_invariant);
  r.general(result.vertices.front());

  std::map<Index, Index> position;
  for (Index i = 0; i < result.vertices.size(); ++i) position[result.vertices[i]] = i;
  std::vector<Edge> edges;
  for (const Edge& e : r.edges()) edges.push_back({position.at(r.label(e.u)), position.at(r.label(e.v)), e.w});
  result.tree = RootedWeightedTree::from_edges(result.vertices.size(), edges, 0);
  result.invariant_slack = r.slack();
  return result;
}

}  // namespace tcs
