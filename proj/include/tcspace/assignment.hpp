#pragma once

#include <utility>
#include <vector>

#include "tcspace/metric.hpp"

namespace tcs {

struct Assignment {
  std::vector<Index> target;  ///< row i is matched to column target[i]
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian
/// method with potentials, O(n^3)). Throws SizeMismatch if the matrix is
/// empty or not square.
Assignment solve_assignment(const std::vector<std::vector<double>>& cost);

struct Bijection {
  std::vector<std::pair<Index, Index>> pairs;  ///< (a, f(a)) in the order of A
  double cost = 0.0;                           ///< sum of d(a, f(a))
};

/// Bijection f : A -> B minimizing sum d(a, f(a)). Throws SizeMismatch
/// when |A| != |B| or the sets are empty.
Bijection optimal_bijection(const FiniteMetricSpace& space, const std::vector<Index>& a, const std::vector<Index>& b);

}  // namespace tcs
