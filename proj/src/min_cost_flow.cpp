#include "min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

namespace tcs::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Node numbering for Dijkstra: rows 0..m-1, cols m..m+k-1, sink m+k.
struct Residual {
  std::size_t m, k;
  std::span<const double> cost;
  std::vector<double> flow;
  std::vector<double> supply_left;
  std::vector<double> demand_left;
  std::vector<double> price;  // node potentials, sink included
  double eps;

  double c(std::size_t i, std::size_t j) const { return cost[i * k + j]; }
  double& x(std::size_t i, std::size_t j) { return flow[i * k + j]; }
  double x(std::size_t i, std::size_t j) const { return flow[i * k + j]; }
};

// One Dijkstra pass; returns the predecessor array or nullopt when the sink
// is unreachable. Updates potentials with the capped-distance rule so that
// reduced costs stay nonnegative on every residual arc.
std::optional<std::vector<std::ptrdiff_t>> shortest_path(Residual& g) {
  const std::size_t m = g.m, k = g.k, sink = m + k, nodes = m + k + 1;
  std::vector<double> dist(nodes, kInf);
  std::vector<std::ptrdiff_t> pred(nodes, -1);  // -2 marks the super source
  std::vector<char> done(nodes, 0);

  for (std::size_t i = 0; i < m; ++i) {
    if (g.supply_left[i] > g.eps) {
      dist[i] = std::max(0.0, -g.price[i]);
      pred[i] = -2;
    }
  }
  for (;;) {
    std::size_t u = nodes;
    for (std::size_t v = 0; v < nodes; ++v) {
      if (!done[v] && dist[v] < kInf && (u == nodes || dist[v] < dist[u])) u = v;
    }
    if (u == nodes) break;
    done[u] = 1;
    if (u < m) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t v = m + j;
        const double cand = dist[u] + std::max(0.0, g.c(u, j) + g.price[u] - g.price[v]);
        if (cand < dist[v]) {
          dist[v] = cand;
          pred[v] = static_cast<std::ptrdiff_t>(u);
        }
      }
    } else if (u < sink) {
      const std::size_t j = u - m;
      for (std::size_t i = 0; i < m; ++i) {
        if (g.x(i, j) <= 0.0) continue;
        const double cand = dist[u] + std::max(0.0, -g.c(i, j) + g.price[u] - g.price[i]);
        if (cand < dist[i]) {
          dist[i] = cand;
          pred[i] = static_cast<std::ptrdiff_t>(u);
        }
      }
      if (g.demand_left[j] > g.eps) {
        const double cand = dist[u] + std::max(0.0, g.price[u] - g.price[sink]);
        if (cand < dist[sink]) {
          dist[sink] = cand;
          pred[sink] = static_cast<std::ptrdiff_t>(u);
        }
      }
    }
  }
  if (dist[sink] == kInf) return std::nullopt;
  for (std::size_t v = 0; v < nodes; ++v) g.price[v] += std::min(dist[v], dist[sink]);
  return pred;
}

void augment(Residual& g, const std::vector<std::ptrdiff_t>& pred) {
  const std::size_t m = g.m, sink = g.m + g.k;
  // Walk back from the sink: sink <- col <- row <- col <- ... <- row <- source.
  double delta = kInf;
  std::size_t v = sink;
  const std::size_t last_col = static_cast<std::size_t>(pred[sink]) - m;
  delta = std::min(delta, g.demand_left[last_col]);
  v = static_cast<std::size_t>(pred[sink]);
  std::size_t first_row = 0;
  for (;;) {
    const std::size_t row = static_cast<std::size_t>(pred[v]);  // v is a column
    const std::ptrdiff_t before = pred[row];
    if (before == -2) {
      first_row = row;
      break;
    }
    delta = std::min(delta, g.x(row, static_cast<std::size_t>(before) - m));  // backward arc
    v = static_cast<std::size_t>(before);
  }
  delta = std::min(delta, g.supply_left[first_row]);

  auto subtract = [&](double& value) {
    value -= delta;
    if (value <= g.eps) value = 0.0;
  };
  subtract(g.demand_left[last_col]);
  subtract(g.supply_left[first_row]);
  v = static_cast<std::size_t>(pred[sink]);
  for (;;) {
    const std::size_t col = v - m;
    const std::size_t row = static_cast<std::size_t>(pred[v]);
    g.x(row, col) += delta;
    const std::ptrdiff_t before = pred[row];
    if (before == -2) break;
    subtract(g.x(row, static_cast<std::size_t>(before) - m));
    v = static_cast<std::size_t>(before);
  }
}

// Finds a cycle in the bipartite support graph; returns the alternating list
// of (row, col) cells, starting with the cell that closes the cycle.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> support_cycle(const Residual& g) {
  const std::size_t m = g.m, k = g.k, nodes = m + k;
  std::vector<std::ptrdiff_t> parent(nodes, -1);
  std::vector<std::size_t> depth(nodes, 0);
  std::vector<char> seen(nodes, 0);
  auto neighbors = [&](std::size_t v) {
    std::vector<std::size_t> out;
    if (v < m) {
      for (std::size_t j = 0; j < k; ++j) {
        if (g.x(v, j) > 0.0) out.push_back(m + j);
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        if (g.x(i, v - m) > 0.0) out.push_back(i);
      }
    }
    return out;
  };
  for (std::size_t start = 0; start < nodes; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : neighbors(u)) {
        if (static_cast<std::ptrdiff_t>(w) == parent[u]) continue;
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = static_cast<std::ptrdiff_t>(u);
          depth[w] = depth[u] + 1;
          stack.push_back(w);
          continue;
        }
        // Non-tree edge u-w closes a cycle through the DFS forest.
        std::vector<std::size_t> left{u}, right{w};
        std::size_t a = u, b = w;
        while (depth[a] > depth[b]) left.push_back(a = static_cast<std::size_t>(parent[a]));
        while (depth[b] > depth[a]) right.push_back(b = static_cast<std::size_t>(parent[b]));
        while (a != b) {
          left.push_back(a = static_cast<std::size_t>(parent[a]));
          right.push_back(b = static_cast<std::size_t>(parent[b]));
        }
        right.pop_back();  // meeting point already in left
        std::vector<std::size_t> ring(left.begin(), left.end());
        ring.insert(ring.end(), right.rbegin(), right.rend());
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t t = 0; t < ring.size(); ++t) {
          const std::size_t p = ring[t], q = ring[(t + 1) % ring.size()];
          cells.emplace_back(p < m ? std::pair{p, q - m} : std::pair{q, p - m});
        }
        return cells;
      }
    }
  }
  return std::nullopt;
}

void cancel_support_cycles(Residual& g) {
  while (auto cycle = support_cycle(g)) {
    const auto& cells = *cycle;
    double delta_cost = 0.0;
    for (std::size_t t = 0; t < cells.size(); ++t) {
      const double c = g.c(cells[t].first, cells[t].second);
      delta_cost += (t % 2 == 0) ? c : -c;
    }
    // Move mass onto the parity class that does not increase cost.
    const std::size_t minus_parity = delta_cost <= 0.0 ? 1 : 0;
    double theta = kInf;
    std::size_t arg = 0;
    for (std::size_t t = minus_parity; t < cells.size(); t += 2) {
      const double v = g.x(cells[t].first, cells[t].second);
      if (v < theta) {
        theta = v;
        arg = t;
      }
    }
    for (std::size_t t = 0; t < cells.size(); ++t) {
      double& v = g.x(cells[t].first, cells[t].second);
      v += (t % 2 == minus_parity) ? -theta : theta;
      if (t % 2 == minus_parity && v <= g.eps) v = 0.0;
    }
    g.x(cells[arg].first, cells[arg].second) = 0.0;
  }
}

}  // namespace

TransportSolution solve_transport(std::span<const double> supply, std::span<const double> demand,
                                  std::span<const double> cost) {
  Residual g{supply.size(), demand.size(), cost, {}, {}, {}, {}, 0.0};
  g.flow.assign(g.m * g.k, 0.0);
  g.supply_left.assign(supply.begin(), supply.end());
  g.demand_left.assign(demand.begin(), demand.end());
  g.price.assign(g.m + g.k + 1, 0.0);
  const double total = std::accumulate(supply.begin(), supply.end(), 0.0);
  g.eps = 1e-14 * total;

  while (auto pred = shortest_path(g)) augment(g, *pred);
  cancel_support_cycles(g);

  TransportSolution out;
  out.row_price.resize(g.m);
  out.col_price.resize(g.k);
  for (std::size_t i = 0; i < g.m; ++i) out.row_price[i] = -g.price[i];
  for (std::size_t j = 0; j < g.k; ++j) out.col_price[j] = -g.price[g.m + j];
  for (std::size_t i = 0; i < g.m; ++i) {
    for (std::size_t j = 0; j < g.k; ++j) out.cost += g.x(i, j) * g.c(i, j);
  }
  out.flow = std::move(g.flow);
  return out;
}

}  // namespace tcs::detail
