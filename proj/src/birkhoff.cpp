#include "tcspace/birkhoff.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "tcspace/assignment.hpp"
#include "tcspace/error.hpp"

namespace tcs {

namespace {

void check_doubly_stochastic(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorCode::NotDoublyStochastic, "empty matrix");
  std::vector<double> col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error(ErrorCode::NotDoublyStochastic, "matrix is not square", {i});
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = a[i][j];
      if (!std::isfinite(x) || x < -1e-12 || x > 1.0 + 1e-9) {
        throw Error(ErrorCode::NotDoublyStochastic, "entry outside [0, 1]", {i, j});
      }
      row += x;
      col[j] += x;
    }
    if (std::abs(row - 1.0) > 1e-9) throw Error(ErrorCode::NotDoublyStochastic, "row sum differs from 1", {i});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(col[j] - 1.0) > 1e-9) throw Error(ErrorCode::NotDoublyStochastic, "column sum differs from 1", {j});
  }
}

// Caratheodory step: while the permutation matrices are linearly dependent,
// move weight along a null vector until some weight vanishes.
void reduce_terms(std::vector<BirkhoffTerm>& terms, std::size_t n) {
  const std::size_t limit = (n - 1) * (n - 1) + 1;
  while (terms.size() > limit) {
    const auto k = static_cast<Eigen::Index>(terms.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n * n), k);
    for (Eigen::Index t = 0; t < k; ++t) {
      const auto& p = terms[static_cast<std::size_t>(t)].perm;
      for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i * n + p[i]), t) = 1.0;
    }
    const Eigen::MatrixXd null = m.fullPivLu().kernel();
    Eigen::VectorXd c = null.col(0);
    if (c.maxCoeff() <= 0.0) c = -c;
    double step = std::numeric_limits<double>::infinity();
    Eigen::Index arg = 0;
    for (Eigen::Index t = 0; t < k; ++t) {
      if (c(t) > 1e-12 && terms[static_cast<std::size_t>(t)].weight / c(t) < step) {
        step = terms[static_cast<std::size_t>(t)].weight / c(t);
        arg = t;
      }
    }
    for (Eigen::Index t = 0; t < k; ++t) terms[static_cast<std::size_t>(t)].weight -= step * c(t);
    terms[static_cast<std::size_t>(arg)].weight = 0.0;
    std::erase_if(terms, [](const BirkhoffTerm& t) { return t.weight <= 0.0; });
  }
}

}  // namespace

std::vector<BirkhoffTerm> birkhoff_decompose(const std::vector<std::vector<double>>& a) {
  check_doubly_stochastic(a);
  const std::size_t n = a.size();
  std::vector<std::vector<double>> rest = a;
  for (auto& row : rest) {
    for (double& x : row) x = std::max(0.0, x);
  }
  constexpr double tol = 1e-13;
  std::vector<BirkhoffTerm> terms;
  double remaining = 1.0;
  while (remaining > tol) {
    // A perfect matching inside the support exists by Hall's theorem;
    // zero cost on support entries makes the assignment solver find one.
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rest[i][j] > tol) cost[i][j] = 0.0;
      }
    }
    const Assignment match = solve_assignment(cost);
    if (match.cost > 0.0) break;  // only rounding residue is left
    double w = 1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (rest[i][match.target[i]] < w) {
        w = rest[i][match.target[i]];
        arg = i;
      }
    }
    for (std::size_t i = 0; i < n; ++i) rest[i][match.target[i]] -= w;
    rest[arg][match.target[arg]] = 0.0;
    remaining -= w;
    terms.push_back({w, match.target});
  }
  reduce_terms(terms, n);
  const double total =
      std::accumulate(terms.begin(), terms.end(), 0.0, [](double s, const BirkhoffTerm& t) { return s + t.weight; });
  for (auto& t : terms) t.weight /= total;
  return terms;
}

std::vector<std::vector<double>> birkhoff_reconstruct(const std::vector<BirkhoffTerm>& terms, std::size_t n) {
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < n; ++i) out[i][t.perm[i]] += t.weight;
  }
  return out;
}

}  // namespace tcs
