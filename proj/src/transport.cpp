#include "tcspace/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "min_cost_flow.hpp"
#include "tcspace/error.hpp"

namespace tcs {

namespace {

void require_same_space(const FiniteMetricSpace& space, const ZeroSumMeasure& mu) {
  if (mu.point_count() != space.size()) {
    throw Error(ErrorCode::SizeMismatch, "measure and metric space have different sizes");
  }
}

struct Solved {
  TcResult result;
  detail::TransportSolution raw;
};

Solved solve(const FiniteMetricSpace& space, const ZeroSumMeasure& mu) {
  require_same_space(space, mu);
  Solved out;
  if (mu.is_zero()) return out;
  const auto pos = mu.positive_part();
  const auto neg = mu.negative_part();
  std::vector<double> supply, demand, cost;
  auto& plan = out.result.plan;
  for (const auto& [i, a] : pos) {
    plan.rows.push_back(i);
    supply.push_back(a);
  }
  for (const auto& [j, b] : neg) {
    plan.cols.push_back(j);
    demand.push_back(b);
  }
  cost.reserve(pos.size() * neg.size());
  for (Index i : plan.rows) {
    for (Index j : plan.cols) cost.push_back(space(i, j));
  }
  out.raw = detail::solve_transport(supply, demand, cost);
  plan.mass = out.raw.flow;
  out.result.value = out.raw.cost;
  return out;
}

}  // namespace

TcResult tc_norm(const FiniteMetricSpace& space, const ZeroSumMeasure& mu) { return solve(space, mu).result; }

Certified tc_norm_certified(const FiniteMetricSpace& space, const ZeroSumMeasure& mu) {
  require_same_space(space, mu);
  if (mu.is_zero()) throw Error(ErrorCode::ZeroMeasure, "the zero measure has no optimality certificate");
  Solved s = solve(space, mu);
  const auto& cols = s.result.plan.cols;
  // f(z) = min_j (v_j + d(z, y_j)) is 1-Lipschitz, f(x_i) >= u_i and
  // f(y_j) <= v_j, so <f, mu> is at least the dual optimum.
  std::vector<double> f(space.size(), std::numeric_limits<double>::infinity());
  for (Index z = 0; z < space.size(); ++z) {
    for (std::size_t j = 0; j < cols.size(); ++j) f[z] = std::min(f[z], s.raw.col_price[j] + space(z, cols[j]));
  }
  const double shift = f[space.base_point()];
  for (double& v : f) v -= shift;
  return {std::move(s.result), LipschitzFunction{std::move(f)}};
}

LipschitzFunction dual_potential(const FiniteMetricSpace& space, const ZeroSumMeasure& mu) {
  return tc_norm_certified(space, mu).dual;
}

double transport_cost(const FiniteMetricSpace& space, const MolecularRepresentation& rep) {
  double total = 0.0;
  for (const auto& t : rep.terms()) total += t.r * space.distance(t.x, t.y);
  return total;
}

MolecularRepresentation make_disjoint(const MolecularRepresentation& rep) {
  std::vector<Molecule> terms = rep.terms();
  auto find_pair = [&terms]() -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      for (std::size_t l = 0; l < terms.size(); ++l) {
        if (l != j && terms[l].x == terms[j].y) return std::pair{j, l};
      }
    }
    return std::nullopt;
  };
  while (auto found = find_pair()) {
    const auto [j, l] = *found;
    const Molecule a = terms[j];  // x -> z
    const Molecule b = terms[l];  // z -> y
    std::vector<Molecule> replacement;
    if (a.r >= b.r) {
      if (a.r - b.r > 0.0) replacement.push_back({a.r - b.r, a.x, a.y});
      if (a.x != b.y) replacement.push_back({b.r, a.x, b.y});
    } else {
      if (a.x != b.y) replacement.push_back({a.r, a.x, b.y});
      replacement.push_back({b.r - a.r, b.x, b.y});
    }
    // Replacements take the slots of j and l, in index order.
    std::vector<Molecule> next;
    next.reserve(terms.size());
    std::size_t used = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      if (t != j && t != l) {
        next.push_back(terms[t]);
      } else if (used < replacement.size()) {
        next.push_back(replacement[used++]);
      }
    }
    terms = std::move(next);
  }
  return MolecularRepresentation(std::move(terms));
}

bool verify_optimality(const FiniteMetricSpace& space, const MolecularRepresentation& rep,
                       const LipschitzFunction& f) {
  if (lip_norm(space, f.values) > 1.0 + 1e-9) {
    throw Error(ErrorCode::NotOneLipschitz, "certificate is not 1-Lipschitz");
  }
  return std::all_of(rep.terms().begin(), rep.terms().end(), [&](const Molecule& t) {
    const double d = space.distance(t.x, t.y);
    return std::abs(f(t.x) - f(t.y) - d) <= 1e-7 * std::max(1.0, d);
  });
}

double wasserstein(const FiniteMetricSpace& space, const std::vector<double>& sigma, const std::vector<double>& tau) {
  if (sigma.size() != space.size() || tau.size() != space.size()) {
    throw Error(ErrorCode::SizeMismatch, "distribution size differs from space size");
  }
  auto check = [](const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::NotProbability, "negative probability");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-9) throw Error(ErrorCode::NotProbability, "probabilities do not sum to 1");
    return s;
  };
  const double ss = check(sigma), st = check(tau);
  std::map<Index, double> diff;
  for (Index i = 0; i < space.size(); ++i) {
    const double v = sigma[i] / ss - tau[i] / st;
    if (v != 0.0) diff.emplace(i, v);
  }
  double residual = 0.0;
  for (const auto& [i, v] : diff) residual += v;
  // Push the rounding residue onto the largest coefficient so the
  // difference is an exact element of the zero-sum space.
  if (!diff.empty() && residual != 0.0) {
    auto big = std::max_element(diff.begin(), diff.end(),
                                [](const auto& a, const auto& b) { return std::abs(a.second) < std::abs(b.second); });
    big->second -= residual;
  }
  return tc_norm(space, ZeroSumMeasure(space.size(), std::move(diff))).value;
}

std::vector<std::pair<Index, Index>> extreme_molecules(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::pair<Index, Index>> out;
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      const double d = space(x, y);
      bool between = false;
      for (Index z = 0; z < n && !between; ++z) {
        if (z == x || z == y) continue;
        between = std::abs(space(x, z) + space(z, y) - d) <= 1e-9 * d;
      }
      if (!between) out.emplace_back(x, y);
    }
  }
  return out;
}

std::optional<WeightedGraph> recognize_tree_metric(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  if (n == 1) return WeightedGraph(1, {});
  const auto pairs = extreme_molecules(space);
  if (pairs.size() != n - 1) return std::nullopt;
  std::vector<Edge> edges;
  for (const auto& [x, y] : pairs) edges.push_back({x, y, space(x, y)});
  WeightedGraph graph(n, std::move(edges));
  if (!graph.connected()) return std::nullopt;
  const FiniteMetricSpace g = geodesic_metric(graph, space.base_point(), 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(g(i, j) - space(i, j)) > 1e-9 * space(i, j)) return std::nullopt;
    }
  }
  return graph;
}

}  // namespace tcs
