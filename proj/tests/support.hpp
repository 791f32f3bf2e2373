#pragma once

#include <cmath>
#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tcspace/measure.hpp"
#include "tcspace/metric.hpp"
#include "tcspace/rng.hpp"
#include "tcspace/tree.hpp"

namespace testing {

/// Euclidean metric of n random points in [0, 10]^3.
inline tcs::FiniteMetricSpace random_space(std::size_t n, tcs::Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<std::array<double, 3>> pts(n);
  for (auto& p : pts) {
    for (double& c : p) c = u(rng);
  }
  tcs::DistanceMatrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (int c = 0; c < 3; ++c) s += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
      d[i][j] = std::sqrt(s);
    }
  }
  return tcs::validate_metric(d);
}

/// Random recursive tree: parent of v uniform in [0, v), weights in [wmin, wmax].
inline tcs::RootedWeightedTree random_tree(std::size_t n, tcs::Rng& rng, double wmin = 0.1, double wmax = 10.0) {
  std::uniform_real_distribution<double> w(wmin, wmax);
  std::vector<tcs::Index> parents(n, tcs::RootedWeightedTree::npos);
  std::vector<double> weights(n, 0.0);
  for (std::size_t v = 1; v < n; ++v) {
    parents[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    weights[v] = w(rng);
  }
  return tcs::RootedWeightedTree::from_parents(0, std::move(parents), std::move(weights));
}

inline tcs::FiniteMetricSpace family_metric(const std::string& text) {
  return tcs::geodesic_metric(tcs::generate_family(*tcs::parse_family(text)));
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace testing
