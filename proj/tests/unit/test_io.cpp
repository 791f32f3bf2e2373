#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tcspace/error.hpp"
#include "tcspace/io.hpp"

using namespace tcs;
using io::json;

TEST_SUITE("io") {
  TEST_CASE("metric round trip") {
    const auto s = validate_metric({{0, 1.5, 2}, {1.5, 0, 1}, {2, 1, 0}}, 1, {"a", "b", "c"});
    const auto back = io::metric_from_json(io::metric_to_json(s));
    CHECK(back.base_point() == 1);
    CHECK(back.names() == s.names());
    CHECK(back.matrix() == s.matrix());
  }

  TEST_CASE("graph parsing accepts weighted and unweighted edges") {
    const auto g = io::graph_from_json(json::parse(R"({"n":3,"edges":[[0,1],[1,2,2.5]]})"));
    CHECK(g.edge_count() == 2);
    CHECK(g.edges()[1].w == 2.5);
    CHECK(g.edges()[0].w == 1.0);
    const auto back = io::graph_from_json(io::graph_to_json(g));
    CHECK(back.edges()[1].w == 2.5);
  }

  TEST_CASE("malformed documents raise ParseError") {
    try {
      io::graph_from_json(json::parse(R"({"n":"three"})"));
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
    CHECK_THROWS_AS(io::load_json("/nonexistent/file.json"), Error);
  }

  TEST_CASE("measure parsing") {
    const auto c4 = testing::family_metric("cycle:4");
    const auto [s, mu] = io::measure_from_json(json::parse(R"({"coeffs":{"0":1,"2":-1}})"), &c4);
    CHECK(mu(0) == 1.0);
    CHECK(mu(2) == -1.0);
    CHECK(s.size() == 4);
    const auto [s2, mu2] = io::measure_from_json(
        json::parse(R"({"space":{"points":["x","y"],"dist":[[0,2],[2,0]]},"coeffs":{"1":0.5,"0":-0.5}})"));
    CHECK(s2(0, 1) == 2.0);
    CHECK(mu2(1) == 0.5);
    CHECK(io::measure_from_json(io::measure_to_json(mu), &c4).second.coeffs() == mu.coeffs());
  }

  TEST_CASE("tree round trip") {
    Rng rng(111);
    const auto t = testing::random_tree(10, rng);
    const auto j = io::tree_to_json(t);
    CHECK(j["parents"][0] == -1);
    const auto back = io::tree_from_json(j);
    CHECK(back.parents() == t.parents());
    for (Index v = 1; v < 10; ++v) CHECK(back.edge_weight(v) == t.edge_weight(v));
  }

  TEST_CASE("embedding round trip") {
    const auto emb = cycle_path_embedding(5);
    const auto back = io::embedding_from_json(io::embedding_to_json(emb), emb.base);
    REQUIRE(back.components.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(back.components[i].p == emb.components[i].p);
      CHECK(back.components[i].vertex_map == emb.components[i].vertex_map);
      CHECK(back.components[i].tree.parents() == emb.components[i].tree.parents());
    }
  }

  TEST_CASE("field sign convention") {
    const auto g = make_geodesic_graph(generate_family(*parse_family("cycle:3")));
    const auto f = io::field_from_json(json::parse(R"({"edges":[[0,1,2.0],[2,1,1.0],[0,2,0.5]]})"), g);
    CHECK(f(0, 1) == 2.0);
    CHECK(f(1, 2) == -1.0);
    CHECK(f(2, 0) == -0.5);
    const auto back = io::field_from_json(io::field_to_json(f), g);
    CHECK(back.values() == f.values());
  }

  TEST_CASE("csv helpers and number formatting") {
    TransportPlan plan{{0, 2}, {1}, {0.25, 0.75}};
    CHECK(io::plan_to_csv(plan) == "row,col,mass\n0,1,0.25\n2,1,0.75\n");
    DistortionReport rep;
    rep.rows.push_back({0, 2.0, 3.0, 1.5});
    CHECK(io::distortion_to_csv(rep) == "measure_id,tc_norm,l1_norm,ratio\n0,2,3,1.5\n");
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125}) CHECK(std::stod(io::format_double(x)) == x);
  }
}
