#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "tcspace/error.hpp"
#include "tcspace/gupta.hpp"

using namespace tcs;

namespace {

std::vector<Index> random_keep(std::size_t n, Rng& rng) {
  std::vector<Index> idx(n);
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  idx.resize(k);
  return idx;
}

void check_ratios(const RootedWeightedTree& t, const GuptaResult& r) {
  for (std::size_t a = 0; a < r.vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < r.vertices.size(); ++b) {
      const double ratio = r.tree.distance(a, b) / t.distance(r.vertices[a], r.vertices[b]);
      CHECK(ratio >= 0.25 - 1e-9);
      CHECK(ratio <= 2.0 + 1e-9);
    }
  }
}

}  // namespace

TEST_SUITE("gupta") {
  TEST_CASE("keep everything returns an isometric tree") {
    Rng rng(71);
    const auto t = testing::random_tree(12, rng);
    std::vector<Index> all(12);
    std::iota(all.begin(), all.end(), Index{0});
    const auto r = gupta_restrict(t, all);
    CHECK(r.vertices == all);
    for (Index u = 0; u < 12; ++u) {
      for (Index v = 0; v < 12; ++v) CHECK(r.tree.distance(u, v) == doctest::Approx(t.distance(u, v)).epsilon(1e-12));
    }
  }

  TEST_CASE("single kept vertex") {
    Rng rng(72);
    const auto t = testing::random_tree(10, rng);
    const auto r = gupta_restrict(t, {7});
    CHECK(r.tree.size() == 1);
    CHECK(r.vertices == std::vector<Index>{7});
  }

  TEST_CASE("errors") {
    Rng rng(73);
    const auto t = testing::random_tree(5, rng);
    CHECK_THROWS_AS(gupta_restrict(t, {}), Error);
    CHECK_THROWS_AS(gupta_restrict(t, {9}), Error);
  }

  TEST_CASE("leaves of a star") {
    // Removing the centre of a unit star with 4 leaves.
    std::vector<Index> parents{RootedWeightedTree::npos, 0, 0, 0, 0};
    const auto star = RootedWeightedTree::from_parents(0, parents, {0, 1, 1, 1, 1});
    const auto r = gupta_restrict(star, {1, 2, 3, 4}, true);
    CHECK(r.tree.size() == 4);
    check_ratios(star, r);
    CHECK(r.invariant_slack >= -1e-9);
  }

  TEST_CASE("property: pairwise ratios within [1/4, 2] and the recursion invariant") {
    Rng rng(74);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + trial % 29;
      const auto t = testing::random_tree(n, rng, trial % 3 == 0 ? 1.0 : 0.1, trial % 3 == 0 ? 1.0 : 10.0);
      const auto keep = random_keep(n, rng);
      const auto r = gupta_restrict(t, keep, true);
      auto sorted = keep;
      std::sort(sorted.begin(), sorted.end());
      CHECK(r.vertices == sorted);
      CHECK(r.tree.size() == keep.size());
      check_ratios(t, r);
      CHECK(r.invariant_slack >= -1e-9);
    }
  }

  TEST_CASE("property: leaf-only keep sets on deep paths") {
    for (std::size_t n = 3; n <= 20; ++n) {
      std::vector<Index> parents(n);
      parents[0] = RootedWeightedTree::npos;
      for (Index v = 1; v < n; ++v) parents[v] = v - 1;
      const auto p = RootedWeightedTree::from_parents(0, parents, std::vector<double>(n, 1.0));
      const auto r = gupta_restrict(p, {0, n - 1});
      // x0 is vertex 1, r0 = 1, and the far leaf is glued at r_j = n - 2.5.
      CHECK(r.tree.distance(0, 1) == doctest::Approx(static_cast<double>(n) - 2.5));
      check_ratios(p, r);
    }
  }
}
