#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "lp_oracle.hpp"
#include "support.hpp"
#include "tcspace/error.hpp"
#include "tcspace/transport.hpp"

using namespace tcs;

namespace {

ZeroSumMeasure dirac_pair(std::size_t n, Index x, Index y) { return ZeroSumMeasure::molecule(n, x, y); }

double lp_value(const FiniteMetricSpace& s, const ZeroSumMeasure& mu) {
  std::vector<double> supply, demand;
  std::vector<Index> rows, cols;
  for (const auto& [i, a] : mu.positive_part()) {
    rows.push_back(i);
    supply.push_back(a);
  }
  for (const auto& [j, b] : mu.negative_part()) {
    cols.push_back(j);
    demand.push_back(b);
  }
  std::vector<std::vector<double>> cost(rows.size(), std::vector<double>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) cost[r][c] = s(rows[r], cols[c]);
  }
  return oracle::transport_lp(supply, demand, cost);
}

// Forest check on the bipartite support graph: cells <= nodes - components.
bool support_is_forest(const TransportPlan& plan) {
  const std::size_t m = plan.rows.size(), k = plan.cols.size();
  std::vector<std::size_t> parent(m + k);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (plan.at(r, c) <= 0.0) continue;
      const std::size_t a = find(r), b = find(m + c);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("transport") {
  TEST_CASE("measure invariants") {
    CHECK_THROWS_AS(ZeroSumMeasure(3, {{0, 1.0}, {1, -0.5}}), Error);
    CHECK_THROWS_AS(ZeroSumMeasure(3, {{5, 1.0}, {1, -1.0}}), Error);
    const ZeroSumMeasure mu(4, {{0, 1.0}, {1, 0.0}, {2, -1.0}});
    CHECK(mu.coeffs().size() == 2);
    CHECK(mu.mass() == 1.0);
    CHECK(ZeroSumMeasure::molecule(4, 2, 2).is_zero());
  }

  TEST_CASE("molecule norm equals the distance") {
    const auto c4 = testing::family_metric("cycle:4");
    CHECK(tc_norm(c4, dirac_pair(4, 0, 2)).value == 2.0);
    CHECK(tc_norm(c4, dirac_pair(4, 3, 0)).value == 1.0);
  }

  TEST_CASE("zero measure has norm zero and an empty plan") {
    const auto c4 = testing::family_metric("cycle:4");
    const auto r = tc_norm(c4, ZeroSumMeasure::zero(4));
    CHECK(r.value == 0.0);
    CHECK(r.plan.support_size() == 0);
    CHECK_THROWS_AS(dual_potential(c4, ZeroSumMeasure::zero(4)), Error);
  }

  TEST_CASE("C_4 alternating measure costs 2") {
    const auto c4 = testing::family_metric("cycle:4");
    const ZeroSumMeasure mu(4, {{0, 1.0}, {2, 1.0}, {1, -1.0}, {3, -1.0}});
    CHECK(tc_norm(c4, mu).value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(lp_value(c4, mu) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("molecule dual potential is d(., y) - d(0, y)") {
    const auto c6 = testing::family_metric("cycle:6");
    const auto f = dual_potential(c6, dirac_pair(6, 1, 4));
    CHECK(f(0) == 0.0);
    CHECK(lip_norm(c6, f.values) <= 1.0 + 1e-12);
    CHECK(f(1) - f(4) == doctest::Approx(c6(1, 4)));
    const MolecularRepresentation rep({{1.0, 1, 4}});
    CHECK(verify_optimality(c6, rep, f));
  }

  TEST_CASE("transport cost") {
    const auto p = geodesic_metric(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 2.0}}));
    CHECK(transport_cost(p, MolecularRepresentation({{1.0, 0, 1}})) == 1.0);
    CHECK(transport_cost(p, MolecularRepresentation{}) == 0.0);
    CHECK(transport_cost(p, MolecularRepresentation({{1.0, 0, 1}, {1.0, 1, 2}})) == 3.0);
  }

  TEST_CASE("make_disjoint examples") {
    const MolecularRepresentation chain({{1.0, 0, 1}, {1.0, 1, 2}});
    const auto a = make_disjoint(chain);
    REQUIRE(a.size() == 1);
    CHECK(a.terms()[0].r == 1.0);
    CHECK(a.terms()[0].x == 0);
    CHECK(a.terms()[0].y == 2);

    const MolecularRepresentation disjoint({{1.0, 0, 1}, {2.0, 2, 3}});
    const auto b = make_disjoint(disjoint);
    REQUIRE(b.size() == 2);
    CHECK(b.terms()[1].r == 2.0);
    CHECK(b.terms()[1].x == 2);

    const MolecularRepresentation heavy({{2.0, 0, 1}, {1.0, 1, 2}});
    const auto c = make_disjoint(heavy);
    REQUIRE(c.size() == 2);
    CHECK(c.terms()[0].r == 1.0);
    CHECK(c.terms()[0].x == 0);
    CHECK(c.terms()[0].y == 1);
    CHECK(c.terms()[1].r == 1.0);
    CHECK(c.terms()[1].x == 0);
    CHECK(c.terms()[1].y == 2);
  }

  TEST_CASE("property: make_disjoint keeps the measure and never raises the cost") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 3 + trial % 8;
      const auto s = testing::random_space(n, rng);
      std::vector<Molecule> terms;
      std::uniform_int_distribution<Index> pick(0, n - 1);
      std::uniform_real_distribution<double> w(0.1, 2.0);
      for (int t = 0; t < 6; ++t) {
        const Index x = pick(rng), y = pick(rng);
        if (x != y) terms.push_back({w(rng), x, y});
      }
      const MolecularRepresentation rep(terms);
      const auto out = make_disjoint(rep);
      CHECK(out.is_disjoint());
      CHECK(transport_cost(s, out) <= transport_cost(s, rep) + 1e-12);
      const auto before = rep.reconstruct(n).to_dense();
      const auto after = out.reconstruct(n).to_dense();
      for (Index i = 0; i < n; ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
    }
  }

  TEST_CASE("verify_optimality") {
    const auto p = testing::family_metric("path:3");
    const ZeroSumMeasure mu = dirac_pair(3, 0, 2);
    const auto f = dual_potential(p, mu);
    CHECK(verify_optimality(p, MolecularRepresentation{}, f));
    // Through a detour 0 -> 2 -> 1 -> 2 the cost exceeds the norm.
    const MolecularRepresentation detour({{1.0, 0, 2}, {1.0, 2, 1}, {1.0, 1, 2}});
    CHECK_FALSE(verify_optimality(p, detour, f));
    CHECK_THROWS_AS(verify_optimality(p, detour, LipschitzFunction{{0.0, 5.0, 0.0}}), Error);
  }

  TEST_CASE("shortcut chains fail the certificate") {
    const auto c4 = testing::family_metric("cycle:4");
    // 0 -> 2 routed as two molecules 0 -> 1 and 1 -> 2 is optimal; 0 -> 3 -> 1 -> 2 is not.
    const auto f = dual_potential(c4, dirac_pair(4, 0, 2));
    CHECK(verify_optimality(c4, MolecularRepresentation({{1.0, 0, 1}, {1.0, 1, 2}}), f));
    CHECK_FALSE(verify_optimality(c4, MolecularRepresentation({{1.0, 0, 3}, {1.0, 3, 1}, {1.0, 1, 2}}), f));
  }

  TEST_CASE("wasserstein") {
    const auto c6 = testing::family_metric("cycle:6");
    const std::vector<double> u(6, 1.0 / 6.0);
    CHECK(wasserstein(c6, u, u) == 0.0);
    std::vector<double> dx(6, 0.0), dy(6, 0.0);
    dx[1] = 1.0;
    dy[4] = 1.0;
    CHECK(wasserstein(c6, dx, dy) == doctest::Approx(3.0));
    std::vector<double> bad(6, 0.2);
    CHECK_THROWS_AS(wasserstein(c6, bad, u), Error);
    std::vector<double> neg = dx;
    neg[0] = -0.5;
    neg[1] = 1.5;
    CHECK_THROWS_AS(wasserstein(c6, neg, u), Error);
  }

  TEST_CASE("extreme molecules") {
    const auto two = validate_metric({{0, 3}, {3, 0}});
    CHECK(extreme_molecules(two) == std::vector<std::pair<Index, Index>>{{0, 1}});
    const auto p3 = testing::family_metric("path:3");
    CHECK(extreme_molecules(p3) == std::vector<std::pair<Index, Index>>{{0, 1}, {1, 2}});
    const auto c4 = testing::family_metric("cycle:4");
    CHECK(extreme_molecules(c4) == std::vector<std::pair<Index, Index>>{{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  }

  TEST_CASE("tree metric recognition") {
    const auto p = geodesic_metric(WeightedGraph(4, {{0, 1, 1.5}, {1, 2, 2.0}, {2, 3, 0.5}}));
    const auto g = recognize_tree_metric(p);
    REQUIRE(g.has_value());
    CHECK(g->edge_count() == 3);
    CHECK(g->edge_index(0, 1).has_value());
    CHECK(g->edge_index(1, 2).has_value());
    CHECK(g->edge_index(2, 3).has_value());
    CHECK_FALSE(recognize_tree_metric(testing::family_metric("cycle:4")).has_value());
    const auto two = recognize_tree_metric(validate_metric({{0, 2}, {2, 0}}));
    REQUIRE(two.has_value());
    CHECK(two->edge_count() == 1);
  }

  TEST_CASE("property: random tree metrics are recognized") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const auto t = testing::random_tree(12, rng);
      const auto g = recognize_tree_metric(t.metric());
      REQUIRE(g.has_value());
      for (const auto& e : t.edges()) CHECK(g->edge_index(e.u, e.v).has_value());
    }
  }

  TEST_CASE("property: duality gap, LP agreement and basic plans") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 3 + trial % 8;
      const auto s = testing::random_space(n, rng);
      const auto mu = random_measure(n, 2 + trial % (n - 1), rng);
      const auto cert = tc_norm_certified(s, mu);
      const double v = cert.primal.value;
      CHECK(cert.dual(s.base_point()) == 0.0);
      CHECK(lip_norm(s, cert.dual.values) <= 1.0 + 1e-9);
      CHECK(testing::rel_close(cert.dual.pair(mu), v, 1e-7));
      CHECK(testing::rel_close(lp_value(s, mu), v, 1e-7));
      const auto& plan = cert.primal.plan;
      CHECK(plan.support_size() + 1 <= plan.rows.size() + plan.cols.size());
      CHECK(support_is_forest(plan));
      for (std::size_t r = 0; r < plan.rows.size(); ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < plan.cols.size(); ++c) row += plan.at(r, c);
        CHECK(row == doctest::Approx(mu(plan.rows[r])).epsilon(1e-9));
      }
      for (std::size_t c = 0; c < plan.cols.size(); ++c) {
        double col = 0.0;
        for (std::size_t r = 0; r < plan.rows.size(); ++r) col += plan.at(r, c);
        CHECK(col == doctest::Approx(-mu(plan.cols[c])).epsilon(1e-9));
      }
      const auto reps = plan.molecules();
      CHECK(transport_cost(s, reps) == doctest::Approx(v).epsilon(1e-12));
      CHECK(verify_optimality(s, reps, cert.dual));
    }
  }

  TEST_CASE("property: any representation costs at least the norm") {
    Rng rng(32);
    for (int trial = 0; trial < 40; ++trial) {
      const auto s = testing::random_space(7, rng);
      std::uniform_int_distribution<Index> pick(0, 6);
      std::vector<Molecule> terms;
      for (int t = 0; t < 5; ++t) {
        const Index x = pick(rng), y = pick(rng);
        if (x != y) terms.push_back({1.0 + t, x, y});
      }
      if (terms.empty()) continue;
      const MolecularRepresentation rep(terms);
      const auto mu = rep.reconstruct(7);
      CHECK(transport_cost(s, rep) >= tc_norm(s, mu).value - 1e-9);
    }
  }

  TEST_CASE("property: sup norm bounded by the tc norm when distances are at least 1") {
    Rng rng(33);
    const auto c9 = testing::family_metric("cycle:9");
    for (int trial = 0; trial < 50; ++trial) {
      const auto mu = random_measure(9, 2 + trial % 8, rng);
      CHECK(mu.sup_norm() <= tc_norm(c9, mu).value + 1e-12);
    }
  }

  TEST_CASE("property: optimal plans contain no circle") {
    // Directed support graph x -> y over optimal molecules: a circle would
    // need some point to be both a source and a target, which a plan from
    // mu+ to mu- never has; the forest property above is the stronger check.
    Rng rng(34);
    for (int trial = 0; trial < 30; ++trial) {
      const auto s = testing::random_space(6, rng);
      const auto mu = random_measure(6, 6, rng);
      const auto reps = tc_norm(s, mu).plan.molecules();
      CHECK(reps.is_disjoint());
    }
  }
}
