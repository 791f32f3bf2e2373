// Serial reference vs OpenMP kernel timings. Each row also confirms that
// both variants return the same result.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "tcspace/frt.hpp"
#include "tcspace/metric.hpp"
#include "tcspace/spectral.hpp"

using namespace tcs;

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / repeats;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %12.6f %12.6f %8.2fx  %s\n", name, serial, parallel, serial / parallel, same ? "match" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial [s]", "omp [s]", "speedup");

  FamilySpec torus{FamilySpec::Kind::Torus, 16, 0, 1.0, 1.0};
  const WeightedGraph g = generate_family(torus);
  FiniteMetricSpace a, b;
  const double t_apsp_s = seconds([&] { a = geodesic_metric_serial(g); }, 3);
  const double t_apsp_p = seconds([&] { b = geodesic_metric(g); }, 3);
  row("apsp torus(16)", t_apsp_s, t_apsp_p, a.matrix() == b.matrix());

  FamilySpec cycle{FamilySpec::Kind::Cycle, 16, 0, 1.0, 1.0};
  const FiniteMetricSpace c16 = geodesic_metric(generate_family(cycle));
  StretchStats s1, s2;
  const double t_frt_s = seconds([&] { s1 = estimate_expected_stretch_serial(c16, 500, 1); }, 1);
  const double t_frt_p = seconds([&] { s2 = estimate_expected_stretch(c16, 500, 1); }, 1);
  row("frt stretch C16 x500", t_frt_s, t_frt_p, s1.mean == s2.mean);

  const auto geo = make_geodesic_graph(king_torus(4));
  const EdgeMeasure nu = uniform_edge_measure(geo->graph);
  IsoperimetricResult i1, i2;
  const double t_iso_s = seconds([&] { i1 = isoperimetric_constant_serial(*geo, nu, 2.0); }, 1);
  const double t_iso_p = seconds([&] { i2 = isoperimetric_constant(*geo, nu, 2.0); }, 1);
  row("isoperimetric king(4)", t_iso_s, t_iso_p, i1.constant == i2.constant);
  return 0;
}
