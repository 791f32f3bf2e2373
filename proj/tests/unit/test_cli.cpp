#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "tcspace/io.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tcspace");
  std::ostringstream out, err;
  const int code = tcs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("tcspace_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("tcnorm of a molecule on two points prints the distance") {
    const auto m = write_temp("mol.json", R"({"space":{"points":["a","b"],"dist":[[0,2.5],[2.5,0]]},"coeffs":{"1":1,"0":-1}})");
    const auto r = run({"tcnorm", "--measure", m});
    REQUIRE(r.code == 0);
    const auto j = tcs::io::json::parse(r.out);
    CHECK(j["value"] == 2.5);
    CHECK(j["certificate_verified"] == true);
    CHECK(j["meta"]["command"] == "tcnorm");
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(run({"frt", "--graph", "cycle:8", "--samples", "0"}).code == 2);
    CHECK(run({"frt"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"frt", "--graph", "cycle:8", "--bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("domain errors exit with 1 and print a stable code") {
    const auto r = run({"gen", "--graph", "cycle:2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error: INVALID_SIZE: ") == 0);
    const auto bad = write_temp("bad.json", R"({"coeffs":{"0":1,"1":-0.5}})");
    const auto r2 = run({"tcnorm", "--graph", "cycle:4", "--measure", bad});
    CHECK(r2.code == 1);
    CHECK(r2.err.find("error: INVALID_MEASURE: ") != std::string::npos);
    const auto r3 = run({"gen", "--graph", "/nonexistent/graph.json"});
    CHECK(r3.code == 1);
    CHECK(r3.err.find("error: PARSE_ERROR: ") != std::string::npos);
  }

  TEST_CASE("gen emits a graph") {
    const auto r = run({"gen", "--graph", "torus:3"});
    REQUIRE(r.code == 0);
    const auto j = tcs::io::json::parse(r.out);
    CHECK(j["n"] == 9);
    CHECK(j["edges"].size() == 18);
    const auto csv = run({"gen", "--graph", "cycle:3", "--csv"});
    CHECK(csv.out == "u,v,w\n0,1,1\n1,2,1\n0,2,1\n");
  }

  TEST_CASE("wasserstein and tree-norm") {
    const auto w = write_temp("w.json", R"({"sigma":[1,0,0,0],"tau":[0,0,1,0]})");
    const auto r = run({"wasserstein", "--graph", "cycle:4", "--measure", w});
    REQUIRE(r.code == 0);
    CHECK(tcs::io::json::parse(r.out)["value"] == 2.0);
    const auto t = write_temp("t.json", R"({"n":3,"root":0,"parents":[-1,0,0],"weights":[0,2,3]})");
    const auto m = write_temp("tm.json", R"({"coeffs":{"1":1,"2":-1}})");
    const auto r2 = run({"tree-norm", "--tree", t, "--measure", m});
    REQUIRE(r2.code == 0);
    CHECK(tcs::io::json::parse(r2.out)["value"] == 5.0);
  }

  TEST_CASE("gupta reports ratios within the guarantee") {
    const auto t = write_temp("g.json", R"({"n":5,"root":0,"parents":[-1,0,0,0,0],"weights":[0,1,1,1,1]})");
    const auto r = run({"gupta", "--tree", t, "--keep", "1,2,3,4"});
    REQUIRE(r.code == 0);
    const auto j = tcs::io::json::parse(r.out);
    CHECK(j["min_ratio"].get<double>() >= 0.25);
    CHECK(j["max_ratio"].get<double>() <= 2.0);
  }

  TEST_CASE("frt, calculus and bounds run") {
    const auto f = run({"frt", "--graph", "cycle:8", "--samples", "20", "--seed", "3"});
    REQUIRE(f.code == 0);
    CHECK(tcs::io::json::parse(f.out)["within_ceiling"] == true);
    const auto c = run({"calculus", "--graph", "cycle:6", "--samples", "10", "--seed", "3"});
    CHECK(c.code == 0);
    const auto b = run({"bounds", "--graph", "cycle:6", "--delta", "1", "--functions", "10"});
    REQUIRE(b.code == 0);
    const auto j = tcs::io::json::parse(b.out);
    CHECK(j["C_iso"] == doctest::Approx(3.0));
    CHECK(j.contains("certificate"));
    const auto t = run({"bounds", "--graph", "torus:3", "--functions", "5"});
    REQUIRE(t.code == 0);
    CHECK_FALSE(tcs::io::json::parse(t.out)["C_spec"].is_null());
  }

  TEST_CASE("embed is byte-identical across runs and thread counts") {
    const auto a = run({"embed", "--graph", "cycle:8", "--samples", "200", "--seed", "7"});
    const auto b = run({"embed", "--graph", "cycle:8", "--samples", "200", "--seed", "7"});
    const auto c = run({"embed", "--graph", "cycle:8", "--samples", "200", "--seed", "7", "--threads", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto d = run({"embed", "--graph", "cycle:8", "--samples", "200", "--seed", "8"});
    CHECK(d.out != a.out);
    const auto j = tcs::io::json::parse(a.out);
    CHECK(j["lower_bound_holds"] == true);
    CHECK(j["upper_bound_holds"] == true);
  }

  TEST_CASE("output file and csv switch") {
    const auto path = (std::filesystem::temp_directory_path() / "tcspace_cli_out.csv").string();
    const auto r = run({"embed", "--graph", "cycle:6", "--samples", "10", "--measures", "5", "--csv", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "measure_id,tc_norm,l1_norm,ratio");
  }

  TEST_CASE("config hash ignores threads and output target") {
    tcs::io::json a = tcs::io::json::parse(run({"frt", "--graph", "cycle:8", "--samples", "5", "--threads", "1"}).out);
    tcs::io::json b = tcs::io::json::parse(run({"frt", "--graph", "cycle:8", "--samples", "5", "--threads", "2"}).out);
    tcs::io::json c = tcs::io::json::parse(run({"frt", "--graph", "cycle:8", "--samples", "6"}).out);
    CHECK(a["meta"]["config_hash"] == b["meta"]["config_hash"]);
    CHECK(a["meta"]["config_hash"] != c["meta"]["config_hash"]);
  }
}
