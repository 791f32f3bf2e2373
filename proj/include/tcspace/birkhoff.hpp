#pragma once

#include <vector>

#include "tcspace/metric.hpp"

namespace tcs {

using Permutation = std::vector<Index>;  ///< row i -> column perm[i]

struct BirkhoffTerm {
  double weight = 0.0;
  Permutation perm;
};

/// Writes a doubly stochastic matrix as a convex combination of at most
/// (n-1)^2 + 1 permutation matrices. Throws NotDoublyStochastic when an
/// entry leaves [0, 1] or a row or column sum is off by more than 1e-9.
std::vector<BirkhoffTerm> birkhoff_decompose(const std::vector<std::vector<double>>& a);

/// sum_k weight_k P_k
std::vector<std::vector<double>> birkhoff_reconstruct(const std::vector<BirkhoffTerm>& terms, std::size_t n);

}  // namespace tcs
