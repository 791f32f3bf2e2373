#include "tcspace/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "tcspace/error.hpp"
#include "tcspace/parallel.hpp"
#include "tcspace/rng.hpp"

namespace tcs {

EdgeMeasure make_edge_measure(const WeightedGraph& graph, std::vector<double> nu) {
  if (nu.size() != graph.edge_count()) throw Error(ErrorCode::InvalidEdgeMeasure, "one mass per edge expected");
  double total = 0.0;
  for (std::size_t e = 0; e < nu.size(); ++e) {
    if (!(nu[e] > 0.0) || !std::isfinite(nu[e])) throw Error(ErrorCode::InvalidEdgeMeasure, "edge mass must be positive", {e});
    total += nu[e];
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidEdgeMeasure, "edge masses do not sum to 1");
  return EdgeMeasure{std::move(nu)};
}

EdgeMeasure uniform_edge_measure(const WeightedGraph& graph) {
  const std::size_t m = graph.edge_count();
  if (m == 0) throw Error(ErrorCode::InvalidEdgeMeasure, "graph has no edges");
  return EdgeMeasure{std::vector<double>(m, 1.0 / static_cast<double>(m))};
}

std::vector<double> induced_vertex_measure(const WeightedGraph& graph, const EdgeMeasure& nu) {
  std::vector<double> mu(graph.vertex_count(), 0.0);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    mu[graph.edges()[e].u] += 0.5 * nu.nu[e];
    mu[graph.edges()[e].v] += 0.5 * nu.nu[e];
  }
  return mu;
}

double perimeter(const GeodesicGraph& g, const EdgeMeasure& nu, const std::vector<char>& in_a) {
  if (in_a.size() != g.graph.vertex_count()) throw Error(ErrorCode::SizeMismatch, "one flag per vertex expected");
  double per = 0.0;
  for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
    const Edge& ed = g.graph.edges()[e];
    if ((in_a[ed.u] != 0) != (in_a[ed.v] != 0)) per += nu.nu[e] / g.metric(ed.u, ed.v);
  }
  return per;
}

namespace {

struct SubsetEvaluator {
  std::vector<Index> eu, ev;
  std::vector<double> cost;  // nu(e) / d(e)
  std::vector<double> mu;
  double exponent;

  SubsetEvaluator(const GeodesicGraph& g, const EdgeMeasure& nu, double delta) {
    if (!(delta >= 1.0)) throw Error(ErrorCode::InvalidParameters, "delta must be at least 1");
    if (nu.nu.size() != g.graph.edge_count()) throw Error(ErrorCode::InvalidEdgeMeasure, "one mass per edge expected");
    for (std::size_t e = 0; e < g.graph.edge_count(); ++e) {
      const Edge& ed = g.graph.edges()[e];
      eu.push_back(ed.u);
      ev.push_back(ed.v);
      cost.push_back(nu.nu[e] / g.metric(ed.u, ed.v));
    }
    mu = induced_vertex_measure(g.graph, nu);
    exponent = (delta - 1.0) / delta;
  }

  double ratio(std::uint64_t mask) const {
    double mass = 0.0;
    for (Index v = 0; v < mu.size(); ++v) {
      if (mask >> v & 1U) mass += mu[v];
    }
    double per = 0.0;
    for (std::size_t e = 0; e < cost.size(); ++e) {
      if ((mask >> eu[e] & 1U) != (mask >> ev[e] & 1U)) per += cost[e];
    }
    const double small = std::max(0.0, std::min(mass, 1.0 - mass));
    const double lhs = exponent == 0.0 ? 1.0 : std::pow(small, exponent);
    return lhs / per;
  }

  double ratio(const std::vector<char>& in_a) const {
    double mass = 0.0;
    for (Index v = 0; v < mu.size(); ++v) {
      if (in_a[v]) mass += mu[v];
    }
    double per = 0.0;
    for (std::size_t e = 0; e < cost.size(); ++e) {
      if ((in_a[eu[e]] != 0) != (in_a[ev[e]] != 0)) per += cost[e];
    }
    const double small = std::max(0.0, std::min(mass, 1.0 - mass));
    const double lhs = exponent == 0.0 ? 1.0 : std::pow(small, exponent);
    return lhs / per;
  }
};

void check_exhaustive_size(const GeodesicGraph& g) {
  const std::size_t n = g.graph.vertex_count();
  if (n > 24) throw Error(ErrorCode::TooLargeForExhaustive, "exhaustive search is limited to 24 vertices", {n});
  if (n < 2) throw Error(ErrorCode::InvalidSize, "need at least two vertices", {n});
}

}  // namespace

// A and its complement give the same ratio, so only masks without the top
// vertex are visited.
IsoperimetricResult isoperimetric_constant(const GeodesicGraph& g, const EdgeMeasure& nu, double delta,
                                           int threads) {
  check_exhaustive_size(g);
  const SubsetEvaluator eval(g, nu, delta);
  const std::size_t n = g.graph.vertex_count();
  const std::int64_t limit = std::int64_t{1} << (n - 1);
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(resolve_threads(threads))
  for (std::int64_t mask = 1; mask < limit; ++mask) best = std::max(best, eval.ratio(static_cast<std::uint64_t>(mask)));
  IsoperimetricResult r;
  r.constant = best;
  r.subsets = static_cast<std::size_t>(limit - 1);
  // The witness is the lowest mask attaining the maximum.
  for (std::int64_t mask = 1; mask < limit; ++mask) {
    if (eval.ratio(static_cast<std::uint64_t>(mask)) == best) {
      r.witness = static_cast<std::uint64_t>(mask);
      break;
    }
  }
  return r;
}

IsoperimetricResult isoperimetric_constant_serial(const GeodesicGraph& g, const EdgeMeasure& nu, double delta) {
  check_exhaustive_size(g);
  const SubsetEvaluator eval(g, nu, delta);
  const std::size_t n = g.graph.vertex_count();
  IsoperimetricResult r;
  const std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const double q = eval.ratio(mask);
    if (q > r.constant) {
      r.constant = q;
      r.witness = mask;
    }
  }
  r.subsets = static_cast<std::size_t>(limit - 1);
  return r;
}

IsoperimetricResult isoperimetric_constant_sampled(const GeodesicGraph& g, const EdgeMeasure& nu, double delta,
                                                   std::size_t samples, std::uint64_t seed) {
  const SubsetEvaluator eval(g, nu, delta);
  const std::size_t n = g.graph.vertex_count();
  if (n < 2) throw Error(ErrorCode::InvalidSize, "need at least two vertices", {n});
  IsoperimetricResult r;
  r.exhaustive = false;
  auto consider = [&](const std::vector<char>& in_a) {
    const auto size = static_cast<std::size_t>(std::count(in_a.begin(), in_a.end(), 1));
    if (size == 0 || size == n) return;
    r.constant = std::max(r.constant, eval.ratio(in_a));
    ++r.subsets;
  };
  for (Index x = 0; x < n; ++x) {
    std::set<double> radii(g.metric.row(x).begin(), g.metric.row(x).end());
    for (double rad : radii) {
      std::vector<char> in_a(n, 0);
      for (Index y : ball(g.metric, x, rad)) in_a[y] = 1;
      consider(in_a);
    }
  }
  Rng rng = make_stream(seed, 0);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<char> in_a(n, 0);
    for (Index v = 0; v < n; ++v) in_a[v] = coin(rng) ? 1 : 0;
    consider(in_a);
  }
  return r;
}

double sobolev_norm(const std::vector<double>& F, const std::shared_ptr<const GeodesicGraph>& g,
                    const EdgeMeasure& nu, double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::InvalidParameters, "p must be at least 1");
  const VectorField grad = gradient(F, g);
  if (std::isinf(p)) return grad.sup_norm();
  double total = 0.0;
  for (std::size_t e = 0; e < grad.values().size(); ++e) total += nu.nu[e] * std::pow(std::abs(grad.values()[e]), p);
  return std::pow(total, 1.0 / p);
}

SobolevCheck sobolev_check(const std::vector<double>& F, const std::shared_ptr<const GeodesicGraph>& g,
                           const EdgeMeasure& nu, double delta, double C) {
  if (!(delta >= 1.0)) throw Error(ErrorCode::InvalidParameters, "delta must be at least 1");
  const auto mu = induced_vertex_measure(g->graph, nu);
  double mean = 0.0;
  for (Index v = 0; v < F.size(); ++v) mean += mu[v] * F[v];
  SobolevCheck c;
  if (delta == 1.0) {
    for (Index v = 0; v < F.size(); ++v) {
      if (mu[v] > 0.0) c.lhs = std::max(c.lhs, std::abs(F[v] - mean));
    }
  } else {
    const double q = delta / (delta - 1.0);
    double total = 0.0;
    for (Index v = 0; v < F.size(); ++v) total += mu[v] * std::pow(std::abs(F[v] - mean), q);
    c.lhs = std::pow(total, 1.0 / q);
  }
  c.rhs = 2.0 * C * sobolev_norm(F, g, nu, 1.0);
  c.holds = c.lhs <= c.rhs + 1e-9;
  return c;
}

WeightedGraph king_torus(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "torus side must be at least 2", {n});
  std::set<std::pair<Index, Index>> seen;
  std::vector<Edge> edges;
  const double w = 1.0 / static_cast<double>(n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          if (dx == 0 && dy == 0) continue;
          const Index x2 = (x + static_cast<Index>(static_cast<int>(n) + dx)) % n;
          const Index y2 = (y + static_cast<Index>(static_cast<int>(n) + dy)) % n;
          const Index a = x * n + y, b = x2 * n + y2;
          if (a == b) continue;
          if (seen.insert({std::min(a, b), std::max(a, b)}).second) edges.push_back({a, b, w});
        }
      }
    }
  }
  return WeightedGraph(n * n, std::move(edges));
}

double counting_constant(const std::vector<double>& lips, double delta, double beta) {
  // s^delta / count(s) peaks at s = 1, at beta, or just below a jump of
  // the step function count(s).
  std::vector<double> sorted = lips;
  std::sort(sorted.begin(), sorted.end());
  auto count_le = [&](double s) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin());
  };
  auto count_lt = [&](double s) {
    return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), s) - sorted.begin());
  };
  const double inf = std::numeric_limits<double>::infinity();
  auto value = [&](double s, double count) { return count > 0.0 ? std::pow(s, delta) / count : inf; };
  double c = std::max(value(1.0, count_le(1.0)), value(beta, count_le(beta)));
  for (double l : sorted) {
    if (l > 1.0 && l <= beta) c = std::max(c, value(l, count_lt(l)));
  }
  return c;
}

namespace {

// Centred representative of a frequency: k or k - n, whichever is smaller
// in absolute value.
double centred(std::size_t k, std::size_t n) {
  const auto a = static_cast<double>(k), b = static_cast<double>(n) - a;
  return std::min(a, b);
}

}  // namespace

SpectralProfile torus_spectral_profile(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "torus side must be at least 2", {n});
  const auto geo = make_geodesic_graph(king_torus(n));
  const std::size_t N = n * n;
  const auto mu = induced_vertex_measure(geo->graph, uniform_edge_measure(geo->graph));
  SpectralProfile p;
  p.n = n;
  p.beta = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      if (k == 0 && m == 0) continue;
      const std::size_t ck = (n - k) % n, cm = (n - m) % n;
      if (std::pair{ck, cm} < std::pair{k, m}) continue;  // conjugate already listed
      const bool self_conjugate = ck == k && cm == m;
      for (int part = 0; part < (self_conjugate ? 1 : 2); ++part) {
        Character c;
        c.k = k;
        c.m = m;
        c.is_sine = part == 1;
        c.values.resize(N);
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>((x * k + y * m) % n) / static_cast<double>(n);
            c.values[x * n + y] = c.is_sine ? std::sin(theta) : std::cos(theta);
          }
        }
        c.lip = lip_norm(geo->metric, c.values);
        for (std::size_t v = 0; v < N; ++v) {
          c.l1 += mu[v] * std::abs(c.values[v]);
          c.linf = std::max(c.linf, std::abs(c.values[v]));
        }
        p.family.push_back(std::move(c));
      }
    }
  }
  double min_lip = std::numeric_limits<double>::infinity(), min_l1 = min_lip, max_linf = 0.0;
  for (const auto& c : p.family) {
    min_lip = std::min(min_lip, c.lip);
    min_l1 = std::min(min_l1, c.l1);
    max_linf = std::max(max_linf, c.linf);
    const double bound_max = 2.0 * std::numbers::pi * static_cast<double>(std::max(c.k, c.m));
    const double bound_sum = 2.0 * std::numbers::pi * (centred(c.k, n) + centred(c.m, n));
    if (c.lip > bound_max * (1.0 + 1e-12)) p.lip_within_max_bound = false;
    if (c.lip > bound_sum * (1.0 + 1e-12)) p.lip_within_sum_bound = false;
  }
  for (std::size_t i = 0; i < p.family.size(); ++i) {
    for (std::size_t j = i + 1; j < p.family.size(); ++j) {
      double dot = 0.0;
      for (std::size_t v = 0; v < N; ++v) dot += mu[v] * p.family[i].values[v] * p.family[j].values[v];
      p.orthogonality_error = std::max(p.orthogonality_error, std::abs(dot));
    }
  }
  p.scale = 1.0 / min_lip;
  std::vector<double> lips;
  for (const auto& c : p.family) lips.push_back(c.lip * p.scale);
  std::sort(lips.begin(), lips.end());
  p.C_l1 = 1.0 / (p.scale * min_l1);
  p.C_linf = p.scale * max_linf;
  p.C_count = counting_constant(lips, p.delta_spec, p.beta);
  p.C = std::max({1.0, p.C_l1, p.C_linf, p.C_count});

  // Extend beta while s^2 <= C count(s) keeps holding.
  p.beta_valid = std::sqrt(p.C * static_cast<double>(lips.size()));
  for (std::size_t i = 0; i < lips.size(); ++i) {
    if (lips[i] < 1.0) continue;
    const double count = static_cast<double>(std::upper_bound(lips.begin(), lips.end(), lips[i]) - lips.begin());
    const auto next = std::upper_bound(lips.begin(), lips.end(), lips[i]);
    const double reach = std::sqrt(p.C * count);
    if (next != lips.end() && reach < *next) {
      p.beta_valid = std::max(1.0, reach);
      break;
    }
  }
  return p;
}

double lower_bound_estimate(double delta_iso, double delta_spec, double beta, double C) {
  if (!(delta_iso >= 2.0) || !(delta_spec >= 1.0) || !(beta >= 1.0) || !(C >= 1.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidParameters, "need delta_iso >= 2, delta_spec >= 1, beta >= 1, C >= 1");
  }
  const double e = delta_spec - delta_iso;
  const double integral = e == 0.0 ? std::log(beta) : (std::pow(beta, e) - 1.0) / e;
  return std::pow(integral, 1.0 / delta_iso) / (2.0 * std::pow(C, 5.0));
}

}  // namespace tcs
