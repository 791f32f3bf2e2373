#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tcspace/measure.hpp"
#include "tcspace/metric.hpp"

namespace tcs {

struct TcResult {
  double value = 0.0;
  TransportPlan plan;
};

/// Exact transportation-cost norm: min-cost coupling of mu^+ and mu^-
/// with costs d(x,y). The returned plan is a basic solution, so its
/// support has at most |supp mu^+| + |supp mu^-| - 1 cells.
TcResult tc_norm(const FiniteMetricSpace& space, const ZeroSumMeasure& mu);

struct Certified {
  TcResult primal;
  LipschitzFunction dual;
};

/// tc_norm together with a 1-Lipschitz f, f(base) = 0, attaining
/// <f, mu> = ||mu||_tc. Throws ZeroMeasure for mu = 0.
Certified tc_norm_certified(const FiniteMetricSpace& space, const ZeroSumMeasure& mu);

LipschitzFunction dual_potential(const FiniteMetricSpace& space, const ZeroSumMeasure& mu);

/// sum_j r_j d(x_j, y_j)
double transport_cost(const FiniteMetricSpace& space, const MolecularRepresentation& rep);

/// Repeatedly eliminates a point z that is the target of one term and the
/// source of another, rerouting min(r, r') of mass directly. The measure is
/// preserved and the transport cost never increases.
MolecularRepresentation make_disjoint(const MolecularRepresentation& rep);

/// True iff f(x_j) - f(y_j) = d(x_j, y_j) (within 1e-7) for every term.
/// Throws NotOneLipschitz when lip_norm(f) > 1 + 1e-9.
bool verify_optimality(const FiniteMetricSpace& space, const MolecularRepresentation& rep,
                       const LipschitzFunction& f);

/// Wasserstein-1 distance between two probability vectors on the space.
double wasserstein(const FiniteMetricSpace& space, const std::vector<double>& sigma,
                   const std::vector<double>& tau);

/// Unordered pairs {x, y}, x < y, with no z strictly between them
/// (d(x,y) = d(x,z) + d(z,y) within 1e-9 * d(x,y)).
std::vector<std::pair<Index, Index>> extreme_molecules(const FiniteMetricSpace& space);

/// The weighted tree whose geodesic metric is d, if one exists on the
/// same vertex set.
std::optional<WeightedGraph> recognize_tree_metric(const FiniteMetricSpace& space);

}  // namespace tcs
