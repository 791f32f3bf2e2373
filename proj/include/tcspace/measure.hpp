#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tcspace/metric.hpp"
#include "tcspace/rng.hpp"

namespace tcs {

/// A finitely supported signed measure of total mass zero on points
/// 0..point_count-1, i.e. an element of the transportation cost space.
/// Zero coefficients are never stored.
class ZeroSumMeasure {
 public:
  ZeroSumMeasure() = default;
  /// Throws InvalidMeasure if the coefficients do not sum to zero (within
  /// 1e-12 * max(1, sum |a|)) or an index is out of range.
  ZeroSumMeasure(std::size_t point_count, std::map<Index, double> coeffs);

  static ZeroSumMeasure zero(std::size_t point_count) { return ZeroSumMeasure(point_count, {}); }
  /// r * (delta_x - delta_y)
  static ZeroSumMeasure molecule(std::size_t point_count, Index x, Index y, double r = 1.0);
  static ZeroSumMeasure from_dense(const std::vector<double>& values);

  std::size_t point_count() const noexcept { return n_; }
  const std::map<Index, double>& coeffs() const noexcept { return coeffs_; }
  double operator()(Index i) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// mu^+(M) = mu^-(M)
  double mass() const;
  double sup_norm() const;
  std::vector<std::pair<Index, double>> positive_part() const;
  std::vector<std::pair<Index, double>> negative_part() const;
  std::vector<double> to_dense() const;

  friend ZeroSumMeasure operator+(const ZeroSumMeasure& a, const ZeroSumMeasure& b);
  friend ZeroSumMeasure operator-(const ZeroSumMeasure& a, const ZeroSumMeasure& b);
  friend ZeroSumMeasure operator*(double s, const ZeroSumMeasure& a);

 private:
  std::size_t n_ = 0;
  std::map<Index, double> coeffs_;
};

struct Molecule {
  double r = 0.0;
  Index x = 0;
  Index y = 0;
};

/// sum_j r_j (delta_{x_j} - delta_{y_j}) with r_j > 0 and x_j != y_j.
class MolecularRepresentation {
 public:
  MolecularRepresentation() = default;
  explicit MolecularRepresentation(std::vector<Molecule> terms);

  const std::vector<Molecule>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  ZeroSumMeasure reconstruct(std::size_t point_count) const;
  /// True when no point occurs both as a source x_j and a target y_k.
  bool is_disjoint() const;

 private:
  std::vector<Molecule> terms_;
};

/// Coupling nu between mu^+ (rows) and mu^- (cols).
struct TransportPlan {
  std::vector<Index> rows;
  std::vector<Index> cols;
  std::vector<double> mass;  ///< row-major, rows.size() x cols.size()

  double at(std::size_t r, std::size_t c) const { return mass[r * cols.size() + c]; }
  /// One molecule per strictly positive entry.
  MolecularRepresentation molecules() const;
  std::size_t support_size() const;
};

/// f : M -> R with f(base) = 0.
struct LipschitzFunction {
  std::vector<double> values;

  double operator()(Index i) const { return values.at(i); }
  double pair(const ZeroSumMeasure& mu) const;
};

/// Random measure on `support` distinct points (at least 2) with
/// coefficients drawn uniformly from [-1, 1]; the last one balances the sum.
ZeroSumMeasure random_measure(std::size_t point_count, std::size_t support, Rng& rng);

/// max_{x != y} |f(x) - f(y)| / d(x,y)
double lip_norm(const FiniteMetricSpace& space, const std::vector<double>& f);

}  // namespace tcs
