#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "tcspace/calculus.hpp"

namespace tcs {

/// Strictly positive probability on the edges of a graph, indexed like
/// graph.edges().
struct EdgeMeasure {
  std::vector<double> nu;
};

/// Throws InvalidEdgeMeasure unless nu > 0 everywhere and sums to 1
/// within 1e-12.
EdgeMeasure make_edge_measure(const WeightedGraph& graph, std::vector<double> nu);
EdgeMeasure uniform_edge_measure(const WeightedGraph& graph);

/// mu(v) = 1/2 sum_{e ∋ v} nu(e)
std::vector<double> induced_vertex_measure(const WeightedGraph& graph, const EdgeMeasure& nu);

/// sum over edges with exactly one endpoint in A of nu(e) / d(e); `in_a`
/// is a membership flag per vertex.
double perimeter(const GeodesicGraph& g, const EdgeMeasure& nu, const std::vector<char>& in_a);

struct IsoperimetricResult {
  double constant = 0.0;      ///< max over tested A of min(mu A, mu A^c)^((delta-1)/delta) / Per(A)
  std::uint64_t witness = 0;  ///< a maximizing subset as a bit mask (exhaustive mode)
  std::size_t subsets = 0;    ///< number of subsets tested
  bool exhaustive = true;     ///< false: the constant is only a lower bound
};

/// Exact constant over all nonempty proper subsets; |V| <= 24, otherwise
/// TooLargeForExhaustive. Subsets are split over OpenMP threads.
IsoperimetricResult isoperimetric_constant(const GeodesicGraph& g, const EdgeMeasure& nu, double delta,
                                           int threads = 0);
/// Single-threaded reference for isoperimetric_constant.
IsoperimetricResult isoperimetric_constant_serial(const GeodesicGraph& g, const EdgeMeasure& nu, double delta);
/// Lower bound from `samples` random subsets plus all singletons and balls.
IsoperimetricResult isoperimetric_constant_sampled(const GeodesicGraph& g, const EdgeMeasure& nu, double delta,
                                                   std::size_t samples, std::uint64_t seed);

/// ||grad F||_{L_p(nu)}; p = infinity gives max_e |grad F(e)|.
double sobolev_norm(const std::vector<double>& F, const std::shared_ptr<const GeodesicGraph>& g,
                    const EdgeMeasure& nu, double p);

struct SobolevCheck {
  double lhs = 0.0;  ///< ||F - E_mu F||_{L_delta'(mu)}, delta' = delta / (delta - 1)
  double rhs = 0.0;  ///< 2 C ||F||_{W^{1,1}}
  bool holds = true;
};

SobolevCheck sobolev_check(const std::vector<double>& F, const std::shared_ptr<const GeodesicGraph>& g,
                           const EdgeMeasure& nu, double delta, double C);

/// (Z/nZ)^2 with the king-move adjacency and edge weights 1/n, so the
/// geodesic metric is (1/n) max(|dx|, |dy|) with cyclic differences.
WeightedGraph king_torus(std::size_t n);

struct Character {
  std::size_t k = 0, m = 0;
  bool is_sine = false;
  std::vector<double> values;  ///< cos or sin of 2 pi (x k + y m) / n at vertex x n + y
  double lip = 0.0;            ///< unscaled Lipschitz constant
  double l1 = 0.0;             ///< unscaled L1(mu) norm
  double linf = 0.0;
};

struct SpectralProfile {
  std::size_t n = 0;
  std::vector<Character> family;
  double scale = 1.0;  ///< every f_i is multiplied by this; the smoothest member has Lip 1
  double delta_spec = 2.0;
  double beta = 1.0;
  double C = 1.0;
  double C_l1 = 1.0, C_linf = 1.0, C_count = 1.0;
  double beta_valid = 1.0;  ///< largest beta for which the counting condition holds with C
  double orthogonality_error = 0.0;
  bool lip_within_max_bound = true;  ///< Lip <= 2 pi max(k, m) for every member
  bool lip_within_sum_bound = true;  ///< Lip <= 2 pi (|k~| + |m~|), centred frequencies
};

/// Real cos/sin parts of the nonconstant characters, one per conjugate
/// pair (sin dropped when it vanishes), with beta = n. Throws InvalidSize
/// for n < 2.
SpectralProfile torus_spectral_profile(std::size_t n);

/// Smallest C with |{i : Lip(f_i) <= s}| >= s^delta / C on [1, beta] for
/// sorted Lipschitz constants `lips` (already scaled).
double counting_constant(const std::vector<double>& lips, double delta, double beta);

/// 1 / (2 C^5) * (int_1^beta s^(ds - di - 1) ds)^(1 / di). Throws
/// InvalidParameters unless di >= 2, ds >= 1, beta >= 1, C >= 1.
double lower_bound_estimate(double delta_iso, double delta_spec, double beta, double C);

}  // namespace tcs
