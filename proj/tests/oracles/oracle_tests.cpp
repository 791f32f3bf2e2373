#include <cmath>

#include "brute_force.hpp"
#include "doctest.h"
#include "lp_oracle.hpp"

TEST_SUITE("oracles") {
  TEST_CASE("lp oracle solves a hand-checked transport problem") {
    // Supplies 1, 1 to demands 1, 1 with a cheap anti-diagonal.
    const double v = oracle::transport_lp({1, 1}, {1, 1}, {{5, 1}, {1, 5}});
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("lp oracle handles unbalanced splits") {
    // One source of mass 3 feeds demands 1 and 2 at costs 2 and 1.
    CHECK(oracle::transport_lp({3}, {1, 2}, {{2, 1}}) == doctest::Approx(4.0));
    // Two sources, one sink: cost is the weighted sum.
    CHECK(oracle::transport_lp({0.25, 0.75}, {1.0}, {{4}, {2}}) == doctest::Approx(2.5));
  }

  TEST_CASE("lp oracle reports infeasibility") {
    // x1 + x2 = 1 and x1 + x2 = 2 cannot both hold.
    CHECK_FALSE(oracle::solve_lp({{1, 1}, {1, 1}}, {1, 2}, {1, 1}).has_value());
  }

  TEST_CASE("lp oracle minimizes a small general program") {
    // min -x - y s.t. x + s = 2, y + t = 3 -> -5.
    const auto v = oracle::solve_lp({{1, 0, 1, 0}, {0, 1, 0, 1}}, {2, 3}, {-1, -1, 0, 0});
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(-5.0));
  }

  TEST_CASE("brute-force assignment enumerates every bijection") {
    CHECK(oracle::brute_force_assignment({{1, 3}, {3, 1}}) == 2.0);
    CHECK(oracle::brute_force_assignment({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}}) == 5.0);
  }

  TEST_CASE("brute-force isoperimetric constant on C_6 with delta = 1 is 3") {
    std::vector<oracle::PlainEdge> edges;
    for (std::size_t i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6, 1.0 / 6.0, 1.0});
    CHECK(oracle::brute_force_isoperimetric(6, edges, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  }
}
