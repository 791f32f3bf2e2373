#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tcs::detail {

/// Optimal solution of the dense transportation problem
///   min sum c_ij x_ij  s.t.  sum_j x_ij = supply_i, sum_i x_ij = demand_j, x >= 0
/// together with dual prices satisfying u_i - v_j <= c_ij, with equality
/// wherever x_ij > 0.
struct TransportSolution {
  std::vector<double> flow;  ///< rows x cols, row-major
  std::vector<double> row_price;
  std::vector<double> col_price;
  double cost = 0.0;
};

/// Successive shortest paths with Dijkstra on reduced costs (ties resolved
/// toward the lowest node index), followed by cancellation of any cycle in
/// the support so the returned flow is a basic (forest) solution.
/// Supplies and demands must be positive with equal totals.
TransportSolution solve_transport(std::span<const double> supply, std::span<const double> demand,
                                  std::span<const double> cost);

}  // namespace tcs::detail
