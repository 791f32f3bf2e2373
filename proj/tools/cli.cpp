#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tcspace/calculus.hpp"
#include "tcspace/embedding.hpp"
#include "tcspace/error.hpp"
#include "tcspace/frt.hpp"
#include "tcspace/gupta.hpp"
#include "tcspace/io.hpp"
#include "tcspace/rng.hpp"
#include "tcspace/spectral.hpp"
#include "tcspace/transport.hpp"
#include "tcspace/tree.hpp"

namespace tcs::cli {

using io::json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

// Stream ids for auxiliary randomness, kept apart from the per-component
// streams 0..samples-1 by deriving a fresh master seed.
constexpr std::uint64_t kMeasureStream = 0x6d65617375726573ULL;
constexpr std::uint64_t kFieldStream = 0x6669656c64ULL;
constexpr std::uint64_t kFunctionStream = 0x66756e6374ULL;
constexpr std::uint64_t kSubsetStream = 0x737562736574ULL;

struct Options {
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  double tol = 1e-9;
  bool csv = false;
  int threads = 0;
  std::string out;
  std::string graph;
  std::string measure;
  std::string tree;
  std::string field;
  std::vector<Index> keep;
  std::size_t measures = 100;
  std::size_t functions = 100;
  double delta = 2.0;
  bool emit_embedding = false;
};

struct Input {
  std::optional<WeightedGraph> graph;
  FiniteMetricSpace space;
  std::optional<FamilySpec> family;
};

Input resolve_graph(const std::string& spec, std::uint64_t seed) {
  Input in;
  if (auto fam = parse_family(spec, seed)) {
    in.family = fam;
    in.graph = generate_family(*fam);
    in.space = geodesic_metric(*in.graph);
    return in;
  }
  const json j = io::load_json(spec);
  if (j.contains("edges")) {
    in.graph = io::graph_from_json(j);
    in.space = geodesic_metric(*in.graph, j.value("base", Index{0}));
  } else {
    in.space = io::metric_from_json(j);
  }
  return in;
}

const WeightedGraph& require_graph(const Input& in) {
  if (!in.graph) throw Error(ErrorCode::InvalidGraph, "this command needs a graph, not a bare metric");
  return *in.graph;
}

std::string config_string(const CLI::App& sub, const Options& o) {
  std::ostringstream s;
  s << sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help" || name == "--threads" || name == "--out" || opt->count() == 0) continue;
    s << ' ' << name << '=';
    for (const auto& r : opt->results()) s << r << ';';
  }
  s << " seed=" << o.seed;
  return s.str();
}

json meta(const CLI::App& sub, const Options& o) {
  std::ostringstream hash;
  hash << std::hex << fnv1a(config_string(sub, o));
  return {{"command", sub.get_name()}, {"seed", o.seed}, {"config_hash", hash.str()}};
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + o.out);
  f << text;
}

std::string dump(json j) { return j.dump(2) + "\n"; }

std::vector<double> random_values(std::size_t n, std::uint64_t seed, std::uint64_t stream, std::size_t index) {
  Rng rng = make_stream(derive_seed(seed, stream), index);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<ZeroSumMeasure> random_measures(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<ZeroSumMeasure> out;
  if (n < 2) return out;
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = make_stream(derive_seed(seed, kMeasureStream), i);
    const std::size_t max_support = std::min<std::size_t>(n, 10);
    const std::size_t support = std::uniform_int_distribution<std::size_t>(2, max_support)(rng);
    out.push_back(random_measure(n, support, rng));
  }
  return out;
}

json plan_rows(const TransportPlan& plan) {
  json rows = json::array();
  for (std::size_t r = 0; r < plan.rows.size(); ++r) {
    for (std::size_t c = 0; c < plan.cols.size(); ++c) {
      if (plan.at(r, c) > 0.0) rows.push_back({plan.rows[r], plan.cols[c], plan.at(r, c)});
    }
  }
  return rows;
}

std::string cmd_gen(const CLI::App& sub, const Options& o) {
  const Input in = resolve_graph(o.graph, o.seed);
  const WeightedGraph& g = require_graph(in);
  if (o.csv) {
    std::ostringstream s;
    s << "u,v,w\n";
    for (const Edge& e : g.edges()) s << e.u << ',' << e.v << ',' << io::format_double(e.w) << '\n';
    return s.str();
  }
  json j = io::graph_to_json(g);
  j["meta"] = meta(sub, o);
  return dump(j);
}

std::string cmd_tcnorm(const CLI::App& sub, const Options& o) {
  std::optional<Input> in;
  if (!o.graph.empty()) in = resolve_graph(o.graph, o.seed);
  const auto [space, mu] = io::measure_from_json(io::load_json(o.measure), in ? &in->space : nullptr);
  json j;
  if (mu.is_zero()) {
    j = {{"value", 0.0}, {"plan", json::array()}, {"dual", nullptr}, {"certificate_verified", true}};
  } else {
    const Certified c = tc_norm_certified(space, mu);
    if (o.csv) return io::plan_to_csv(c.primal.plan);
    const bool ok = verify_optimality(space, c.primal.plan.molecules(), c.dual);
    j = {{"value", c.primal.value},
         {"plan", plan_rows(c.primal.plan)},
         {"support_size", c.primal.plan.support_size()},
         {"dual", c.dual.values},
         {"dual_pairing", c.dual.pair(mu)},
         {"certificate_verified", ok}};
  }
  if (o.csv) return io::plan_to_csv({});
  j["meta"] = meta(sub, o);
  return dump(j);
}

std::string cmd_wasserstein(const CLI::App& sub, const Options& o) {
  const json m = io::load_json(o.measure);
  FiniteMetricSpace space;
  if (!o.graph.empty()) {
    space = resolve_graph(o.graph, o.seed).space;
  } else {
    space = io::space_from_json(m.contains("space") ? m.at("space") : json());
  }
  std::vector<double> sigma, tau;
  try {
    sigma = m.at("sigma").get<std::vector<double>>();
    tau = m.at("tau").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("expected \"sigma\" and \"tau\" arrays: ") + e.what());
  }
  const double value = wasserstein(space, sigma, tau);
  if (o.csv) return "wasserstein\n" + io::format_double(value) + "\n";
  return dump({{"value", value}, {"meta", meta(sub, o)}});
}

std::string cmd_tree_norm(const CLI::App& sub, const Options& o) {
  const RootedWeightedTree tree = io::tree_from_json(io::load_json(o.tree));
  const FiniteMetricSpace space = tree.metric();
  const auto [s, mu] = io::measure_from_json(io::load_json(o.measure), &space);
  const double value = tree_tc_norm(tree, mu);
  if (o.csv) {
    std::ostringstream out;
    out << "edge_child,coordinate\n";
    for (const auto& [e, x] : tree_isometry(tree, mu)) out << e << ',' << io::format_double(x) << '\n';
    return out.str();
  }
  return dump({{"value", value},
               {"isometry", io::edge_vector_to_json(tree_isometry(tree, mu))},
               {"meta", meta(sub, o)}});
}

std::string cmd_frt(const CLI::App& sub, const Options& o) {
  const Input in = resolve_graph(o.graph, o.seed);
  const std::size_t n = in.space.size();
  const StretchStats s = estimate_expected_stretch(in.space, o.samples, o.seed, o.threads);
  if (o.csv) {
    std::ostringstream out;
    out << "u,v,distance,mean_stretch,stderr\n";
    for (Index u = 0; u < n; ++u) {
      for (Index v = u + 1; v < n; ++v) {
        out << u << ',' << v << ',' << io::format_double(in.space(u, v)) << ',' << io::format_double(s.mean[u * n + v])
            << ',' << io::format_double(s.std_error[u * n + v]) << '\n';
      }
    }
    return out.str();
  }
  const double ceiling = 96.0 * std::log(static_cast<double>(n)) + 96.0;
  return dump({{"points", n},
               {"samples", s.samples},
               {"expansive", true},
               {"min_single_stretch", s.min_ratio},
               {"max_mean_stretch", s.max_mean},
               {"argmax", {s.max_u, s.max_v}},
               {"ceiling", ceiling},
               {"within_ceiling", s.max_mean <= ceiling},
               {"meta", meta(sub, o)}});
}

std::string cmd_gupta(const CLI::App& sub, const Options& o) {
  const RootedWeightedTree tree = io::tree_from_json(io::load_json(o.tree));
  const GuptaResult g = gupta_restrict(tree, o.keep, true);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (Index a = 0; a < g.vertices.size(); ++a) {
    for (Index b = a + 1; b < g.vertices.size(); ++b) {
      const double r = g.tree.distance(a, b) / tree.distance(g.vertices[a], g.vertices[b]);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  if (g.vertices.size() < 2) lo = hi = 1.0;
  json j = {{"tree", io::tree_to_json(g.tree)},
            {"vertices", g.vertices},
            {"min_ratio", lo},
            {"max_ratio", hi},
            {"invariant_slack", std::isinf(g.invariant_slack) ? json(nullptr) : json(g.invariant_slack)},
            {"meta", meta(sub, o)}};
  return dump(j);
}

std::string cmd_embed(const CLI::App& sub, const Options& o) {
  const Input in = resolve_graph(o.graph, o.seed);
  StochasticTreeEmbedding emb = bijective_embedding(in.space, o.samples, o.seed, o.threads);
  check_embedding(emb);
  const double d_hat = max_expected_stretch(emb);
  const std::optional<double> d_edge = in.graph ? std::optional(max_edge_stretch(emb, *in.graph)) : std::nullopt;
  const json emb_json = o.emit_embedding ? io::embedding_to_json(emb) : json(nullptr);
  const L1EmbeddingMap map = build_l1_map(std::move(emb));
  const DistortionReport rep = measure_distortion(map, random_measures(in.space.size(), o.measures, o.seed), o.threads);
  if (o.csv) return io::distortion_to_csv(rep);
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back({r.id, r.tc, r.l1, r.ratio});
  json j = {{"points", in.space.size()},
            {"samples", o.samples},
            {"D_hat", d_hat},
            {"D_hat_edge", d_edge ? json(*d_edge) : json(nullptr)},
            {"distortion", {{"min", rep.min_ratio}, {"max", rep.max_ratio}, {"mean", rep.mean_ratio}}},
            {"lower_bound_holds", rep.min_ratio >= 1.0 - o.tol},
            {"upper_bound_holds", rep.max_ratio <= d_hat + o.tol},
            {"rows", rows},
            {"meta", meta(sub, o)}};
  if (o.emit_embedding) j["embedding"] = emb_json;
  return dump(j);
}

std::string cmd_calculus(const CLI::App& sub, const Options& o) {
  const Input in = resolve_graph(o.graph, o.seed);
  const auto geo = make_geodesic_graph(require_graph(in), in.space.base_point());
  const VectorField f = o.field.empty()
                            ? VectorField(geo, random_values(geo->graph.edge_count(), o.seed, kFieldStream, 0))
                            : io::field_from_json(io::load_json(o.field), geo);
  const bool conservative = is_conservative(f, o.tol);
  const StochasticTreeEmbedding emb = bijective_embedding(geo->metric, o.samples, o.seed, o.threads);
  const std::vector<double> ext = extend_integral_operator(f, emb);
  const double d_edge = max_edge_stretch(emb, geo->graph);
  const double lip = lip_norm(geo->metric, ext);
  json j = {{"conservative", conservative},
            {"sup_norm", f.sup_norm()},
            {"extension", ext},
            {"extension_lip", lip},
            {"D_hat_edge", d_edge},
            {"bound", d_edge * f.sup_norm()},
            {"bound_holds", lip <= d_edge * f.sup_norm() + o.tol}};
  if (conservative) {
    const auto I = integral_operator(f, geo->metric.base_point());
    double gap = 0.0;
    for (Index v = 0; v < I.size(); ++v) gap = std::max(gap, std::abs(I[v] - ext[v]));
    j["integral"] = I;
    j["extension_gap"] = gap;
  }
  if (o.csv) {
    std::ostringstream out;
    out << "vertex,extension" << (conservative ? ",integral" : "") << '\n';
    for (Index v = 0; v < ext.size(); ++v) {
      out << v << ',' << io::format_double(ext[v]);
      if (conservative) out << ',' << io::format_double(j["integral"][v].get<double>());
      out << '\n';
    }
    return out.str();
  }
  j["meta"] = meta(sub, o);
  return dump(j);
}

std::string cmd_bounds(const CLI::App& sub, const Options& o) {
  Input in = resolve_graph(o.graph, o.seed);
  std::optional<std::size_t> torus;
  if (in.family && in.family->kind == FamilySpec::Kind::Torus) {
    torus = in.family->size;
    in.graph = king_torus(*torus);
    in.space = geodesic_metric(*in.graph);
  }
  const auto geo = make_geodesic_graph(require_graph(in));
  const EdgeMeasure nu = uniform_edge_measure(geo->graph);
  const std::size_t n = geo->graph.vertex_count();
  const IsoperimetricResult iso = n <= 24 ? isoperimetric_constant(*geo, nu, o.delta, o.threads)
                                          : isoperimetric_constant_sampled(*geo, nu, o.delta, o.samples,
                                                                           derive_seed(o.seed, kSubsetStream));
  std::size_t holds = 0;
  for (std::size_t i = 0; i < o.functions; ++i) {
    if (sobolev_check(random_values(n, o.seed, kFunctionStream, i), geo, nu, o.delta, iso.constant).holds) ++holds;
  }
  json j = {{"delta_iso", o.delta},
            {"C_iso", iso.constant},
            {"C_iso_exact", iso.exhaustive},
            {"subsets", iso.subsets},
            {"sobolev", {{"checked", o.functions}, {"holds", holds}}}};
  std::ostringstream cert;
  cert << "graph=" << o.graph << " delta_iso=" << io::format_double(o.delta)
       << " C_iso=" << io::format_double(iso.constant) << (iso.exhaustive ? "" : "(lower bound)");
  if (torus) {
    const SpectralProfile p = torus_spectral_profile(*torus);
    const double C = std::max({1.0, iso.constant, p.C});
    j["delta_spec"] = p.delta_spec;
    j["beta"] = p.beta;
    j["C_spec"] = p.C;
    j["orthogonality_error"] = p.orthogonality_error;
    if (o.delta >= 2.0 && iso.exhaustive) {
      const double lb = lower_bound_estimate(o.delta, p.delta_spec, p.beta, C);
      j["lower_bound_D"] = lb;
      cert << " delta_spec=" << io::format_double(p.delta_spec) << " beta=" << io::format_double(p.beta)
           << " C_spec=" << io::format_double(p.C) << " lower_bound_D=" << io::format_double(lb);
    } else {
      j["lower_bound_D"] = nullptr;
    }
  } else {
    j["delta_spec"] = nullptr;
    j["beta"] = nullptr;
    j["C_spec"] = nullptr;
    j["lower_bound_D"] = nullptr;
  }
  j["certificate"] = cert.str();
  if (o.csv) return cert.str() + "\n";
  j["meta"] = meta(sub, o);
  return dump(j);
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transportation cost norms, tree embeddings and embedding lower bounds"};
  app.require_subcommand(1);
  Options o;
  const auto positive = CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max());
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "master seed");
    sub->add_option("--threads", o.threads, "worker cap, 0 = runtime default")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--tol", o.tol, "tolerance for reported checks");
    sub->add_flag("--csv", o.csv, "tabular output");
  };
  auto graph_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--graph", o.graph, "family (cycle:8, torus:4, ...) or JSON file");
    if (required) opt->required();
  };

  auto* gen = app.add_subcommand("gen", "generate a graph family");
  common(gen);
  graph_opt(gen, true);

  auto* tcnorm = app.add_subcommand("tcnorm", "transportation cost norm with dual certificate");
  common(tcnorm);
  graph_opt(tcnorm, false);
  tcnorm->add_option("--measure", o.measure, "measure JSON")->required();

  auto* wass = app.add_subcommand("wasserstein", "Wasserstein-1 distance of two distributions");
  common(wass);
  graph_opt(wass, false);
  wass->add_option("--measure", o.measure, "JSON with sigma and tau arrays")->required();

  auto* tree_norm = app.add_subcommand("tree-norm", "closed-form norm on a tree");
  common(tree_norm);
  tree_norm->add_option("--tree", o.tree, "tree JSON")->required();
  tree_norm->add_option("--measure", o.measure, "measure JSON")->required();

  auto* frt = app.add_subcommand("frt", "sample FRT trees and report stretch");
  common(frt);
  graph_opt(frt, true);
  frt->add_option("--samples", o.samples, "number of trees")->check(positive);

  auto* gupta = app.add_subcommand("gupta", "restrict a tree to a vertex subset");
  common(gupta);
  gupta->add_option("--tree", o.tree, "tree JSON")->required();
  gupta->add_option("--keep", o.keep, "kept vertices, comma separated")->required()->delimiter(',');

  auto* embed = app.add_subcommand("embed", "bijective tree embedding and l1 distortion");
  common(embed);
  graph_opt(embed, true);
  embed->add_option("--samples", o.samples, "number of trees")->check(positive);
  embed->add_option("--measures", o.measures, "number of random test measures");
  embed->add_flag("--emit-embedding", o.emit_embedding, "include the trees in the report");

  auto* calc = app.add_subcommand("calculus", "gradient, integral and extended integral operator");
  common(calc);
  graph_opt(calc, true);
  calc->add_option("--field", o.field, "vector field JSON (random when absent)");
  calc->add_option("--samples", o.samples, "number of trees")->check(positive);

  auto* bounds = app.add_subcommand("bounds", "isoperimetry, Sobolev, profile and lower bound");
  common(bounds);
  graph_opt(bounds, true);
  bounds->add_option("--delta", o.delta, "isoperimetric dimension")->check(CLI::Range(1.0, 1e9));
  bounds->add_option("--samples", o.samples, "random subsets when exhaustive search is too large")->check(positive);
  bounds->add_option("--functions", o.functions, "random functions for the Sobolev check");

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: USAGE: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    std::string text;
    if (sub == gen) text = cmd_gen(*sub, o);
    else if (sub == tcnorm) text = cmd_tcnorm(*sub, o);
    else if (sub == wass) text = cmd_wasserstein(*sub, o);
    else if (sub == tree_norm) text = cmd_tree_norm(*sub, o);
    else if (sub == frt) text = cmd_frt(*sub, o);
    else if (sub == gupta) text = cmd_gupta(*sub, o);
    else if (sub == embed) text = cmd_embed(*sub, o);
    else if (sub == calc) text = cmd_calculus(*sub, o);
    else text = cmd_bounds(*sub, o);
    emit(text, o, out);
  } catch (const Error& e) {
    err << "error: " << code_name(e.code()) << ": " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace tcs::cli
