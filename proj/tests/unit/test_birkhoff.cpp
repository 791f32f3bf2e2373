#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "tcspace/birkhoff.hpp"
#include "tcspace/error.hpp"

using namespace tcs;

namespace {

double max_error(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) e = std::max(e, std::abs(a[i][j] - b[i][j]));
  }
  return e;
}

std::vector<std::vector<double>> random_doubly_stochastic(std::size_t n, std::size_t terms, Rng& rng) {
  std::vector<double> w(terms);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (double& x : w) x = u(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index{0});
  for (double x : w) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Index i = 0; i < n; ++i) a[i][perm[i]] += x / total;
  }
  return a;
}

}  // namespace

TEST_SUITE("birkhoff") {
  TEST_CASE("identity decomposes into itself") {
    const auto t = birkhoff_decompose({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    REQUIRE(t.size() == 1);
    CHECK(t[0].weight == 1.0);
    CHECK(t[0].perm == Permutation{0, 1, 2});
  }

  TEST_CASE("2x2 all-half matrix") {
    auto t = birkhoff_decompose({{0.5, 0.5}, {0.5, 0.5}});
    REQUIRE(t.size() == 2);
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.perm < b.perm; });
    CHECK(t[0].perm == Permutation{0, 1});
    CHECK(t[1].perm == Permutation{1, 0});
    CHECK(t[0].weight == doctest::Approx(0.5));
    CHECK(t[1].weight == doctest::Approx(0.5));
  }

  TEST_CASE("non doubly stochastic input") {
    CHECK_THROWS_AS(birkhoff_decompose({{0.5, 0.5}, {0.5, 0.4}}), Error);
    CHECK_THROWS_AS(birkhoff_decompose({{1.5, -0.5}, {-0.5, 1.5}}), Error);
  }

  TEST_CASE("property: round trip, simplex weights and term bound") {
    Rng rng(51);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 7;
      const auto a = random_doubly_stochastic(n, 1 + trial % 12, rng);
      const auto terms = birkhoff_decompose(a);
      double total = 0.0;
      for (const auto& t : terms) {
        CHECK(t.weight > 0.0);
        CHECK(t.weight <= 1.0 + 1e-12);
        total += t.weight;
        auto sorted = t.perm;
        std::sort(sorted.begin(), sorted.end());
        for (Index i = 0; i < n; ++i) CHECK(sorted[i] == i);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(terms.size() <= (n - 1) * (n - 1) + 1);
      CHECK(max_error(a, birkhoff_reconstruct(terms, n)) < 1e-9);
    }
  }

  TEST_CASE("random 6x6 round trip") {
    Rng rng(52);
    const auto a = random_doubly_stochastic(6, 30, rng);
    CHECK(max_error(a, birkhoff_reconstruct(birkhoff_decompose(a), 6)) < 1e-9);
  }
}
