#include "tcspace/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tcspace/error.hpp"

namespace tcs {

ZeroSumMeasure::ZeroSumMeasure(std::size_t point_count, std::map<Index, double> coeffs) : n_(point_count) {
  double sum = 0.0;
  double total = 0.0;
  for (const auto& [i, a] : coeffs) {
    if (i >= n_) throw Error(ErrorCode::InvalidMeasure, "measure index out of range", {i});
    if (!std::isfinite(a)) throw Error(ErrorCode::InvalidMeasure, "measure coefficient is not finite", {i});
    if (a != 0.0) coeffs_.emplace(i, a);
    sum += a;
    total += std::abs(a);
  }
  if (std::abs(sum) > 1e-12 * std::max(1.0, total)) {
    throw Error(ErrorCode::InvalidMeasure, "measure coefficients do not sum to zero");
  }
}

ZeroSumMeasure ZeroSumMeasure::molecule(std::size_t point_count, Index x, Index y, double r) {
  if (x == y) return zero(point_count);
  return ZeroSumMeasure(point_count, {{x, r}, {y, -r}});
}

ZeroSumMeasure ZeroSumMeasure::from_dense(const std::vector<double>& values) {
  std::map<Index, double> c;
  for (Index i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) c.emplace(i, values[i]);
  }
  return ZeroSumMeasure(values.size(), std::move(c));
}

double ZeroSumMeasure::operator()(Index i) const {
  const auto it = coeffs_.find(i);
  return it == coeffs_.end() ? 0.0 : it->second;
}

double ZeroSumMeasure::mass() const {
  double m = 0.0;
  for (const auto& [i, a] : coeffs_) {
    if (a > 0.0) m += a;
  }
  return m;
}

double ZeroSumMeasure::sup_norm() const {
  double m = 0.0;
  for (const auto& [i, a] : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

std::vector<std::pair<Index, double>> ZeroSumMeasure::positive_part() const {
  std::vector<std::pair<Index, double>> out;
  for (const auto& [i, a] : coeffs_) {
    if (a > 0.0) out.emplace_back(i, a);
  }
  return out;
}

std::vector<std::pair<Index, double>> ZeroSumMeasure::negative_part() const {
  std::vector<std::pair<Index, double>> out;
  for (const auto& [i, a] : coeffs_) {
    if (a < 0.0) out.emplace_back(i, -a);
  }
  return out;
}

std::vector<double> ZeroSumMeasure::to_dense() const {
  std::vector<double> out(n_, 0.0);
  for (const auto& [i, a] : coeffs_) out[i] = a;
  return out;
}

ZeroSumMeasure operator+(const ZeroSumMeasure& a, const ZeroSumMeasure& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::SizeMismatch, "measures live on different spaces");
  std::map<Index, double> c = a.coeffs_;
  for (const auto& [i, v] : b.coeffs_) c[i] += v;
  return ZeroSumMeasure(a.n_, std::move(c));
}

ZeroSumMeasure operator-(const ZeroSumMeasure& a, const ZeroSumMeasure& b) { return a + (-1.0) * b; }

ZeroSumMeasure operator*(double s, const ZeroSumMeasure& a) {
  std::map<Index, double> c;
  for (const auto& [i, v] : a.coeffs_) c.emplace(i, s * v);
  return ZeroSumMeasure(a.n_, std::move(c));
}

MolecularRepresentation::MolecularRepresentation(std::vector<Molecule> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (!(t.r > 0.0) || !std::isfinite(t.r)) throw Error(ErrorCode::InvalidMeasure, "molecule weight must be positive");
    if (t.x == t.y) throw Error(ErrorCode::InvalidMeasure, "molecule endpoints must differ", {t.x});
  }
}

ZeroSumMeasure MolecularRepresentation::reconstruct(std::size_t point_count) const {
  std::map<Index, double> c;
  for (const auto& t : terms_) {
    c[t.x] += t.r;
    c[t.y] -= t.r;
  }
  // Cancellation may leave rounding residue at points that occur on both sides.
  double scale = 0.0;
  for (const auto& t : terms_) scale = std::max(scale, t.r);
  for (auto it = c.begin(); it != c.end();) {
    if (std::abs(it->second) <= 1e-15 * scale) it = c.erase(it);
    else ++it;
  }
  return ZeroSumMeasure(point_count, std::move(c));
}

bool MolecularRepresentation::is_disjoint() const {
  std::set<Index> sources;
  for (const auto& t : terms_) sources.insert(t.x);
  return std::none_of(terms_.begin(), terms_.end(), [&](const Molecule& t) { return sources.count(t.y) > 0; });
}

MolecularRepresentation TransportPlan::molecules() const {
  std::vector<Molecule> terms;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (at(r, c) > 0.0) terms.push_back({at(r, c), rows[r], cols[c]});
    }
  }
  return MolecularRepresentation(std::move(terms));
}

std::size_t TransportPlan::support_size() const {
  return static_cast<std::size_t>(std::count_if(mass.begin(), mass.end(), [](double m) { return m > 0.0; }));
}

double LipschitzFunction::pair(const ZeroSumMeasure& mu) const {
  double s = 0.0;
  for (const auto& [i, a] : mu.coeffs()) s += values.at(i) * a;
  return s;
}

ZeroSumMeasure random_measure(std::size_t point_count, std::size_t support, Rng& rng) {
  if (support < 2 || support > point_count) throw Error(ErrorCode::InvalidParameters, "support must be in [2, n]");
  std::vector<Index> points(point_count);
  std::iota(points.begin(), points.end(), Index{0});
  std::shuffle(points.begin(), points.end(), rng);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::map<Index, double> c;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < support; ++i) {
    const double a = coeff(rng);
    c[points[i]] = a;
    sum += a;
  }
  c[points[support - 1]] = -sum;
  return ZeroSumMeasure(point_count, std::move(c));
}

double lip_norm(const FiniteMetricSpace& space, const std::vector<double>& f) {
  if (f.size() != space.size()) throw Error(ErrorCode::SizeMismatch, "function size differs from space size");
  double best = 0.0;
  for (Index i = 0; i < space.size(); ++i) {
    for (Index j = i + 1; j < space.size(); ++j) best = std::max(best, std::abs(f[i] - f[j]) / space(i, j));
  }
  return best;
}

}  // namespace tcs
