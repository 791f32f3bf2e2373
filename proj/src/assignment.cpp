#include "tcspace/assignment.hpp"

#include <limits>

#include "tcspace/error.hpp"

namespace tcs {

Assignment solve_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) throw Error(ErrorCode::SizeMismatch, "empty assignment problem");
  for (const auto& row : cost) {
    if (row.size() != n) throw Error(ErrorCode::SizeMismatch, "assignment cost matrix is not square");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is a virtual column holding the row being inserted.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment out;
  out.target.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.target[match[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) out.cost += cost[i][out.target[i]];
  return out;
}

Bijection optimal_bijection(const FiniteMetricSpace& space, const std::vector<Index>& a, const std::vector<Index>& b) {
  if (a.empty() || a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "bijection needs equal nonempty sets");
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) cost[i][j] = space.distance(a[i], b[j]);
  }
  const Assignment s = solve_assignment(cost);
  Bijection out;
  for (std::size_t i = 0; i < a.size(); ++i) out.pairs.emplace_back(a[i], b[s.target[i]]);
  out.cost = s.cost;
  return out;
}

}  // namespace tcs
