#pragma once

#include <vector>

#include "tcspace/tree.hpp"

namespace tcs {

struct GuptaResult {
  /// Tree on the kept vertices; vertex i stands for vertices[i].
  RootedWeightedTree tree;
  std::vector<Index> vertices;  ///< ascending original indices
  /// min over recursion levels and kept x of 2 d_T(x, x0) - r0 - d_T'(x, v0);
  /// +inf when not tracked or when no level was needed.
  double invariant_slack;
};

/// Steiner point removal: a tree on `keep` alone whose distances satisfy
/// 1/4 <= d_T' / d_T <= 2. Non-kept leaves are pruned, internal kept
/// vertices split the tree, and the all-leaves case recurses around the
/// lowest-index non-kept vertex x0, cutting at half the distance r0 to the
/// nearest kept vertex. Throws EmptyKeepSet, IndexOutOfRange.
GuptaResult gupta_restrict(const RootedWeightedTree& tree, const std::vector<Index>& keep,
                           bool track_invariant = false);

}  // namespace tcs
