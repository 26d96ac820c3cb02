#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "subsetspace/io.hpp"
#include "subsetspace/sampling.hpp"

using namespace subsetspace;

TEST_CASE("FSet JSON wire format") {
  const NormSpec spec(std::numeric_limits<double>::infinity(), 2);
  FSet x({{0.5, -1.0}, {2.0, 3.5}}, 4, spec);
  nlohmann::json j = fset_to_json(x);
  CHECK(j["n"] == 4);
  CHECK(j["p"] == "inf");
  CHECK(j["points"].size() == 2);
  FSet back = fset_from_json(j);
  CHECK(back == x);
  CHECK(back.ambient_n() == 4);

  SECTION("numeric p") {
    FSet y({{1.0}}, 1, NormSpec(1.5, 1));
    nlohmann::json jy = fset_to_json(y);
    CHECK(jy["p"] == 1.5);
    CHECK(fset_from_json(jy) == y);
  }
  SECTION("malformed input") {
    CHECK_THROWS(fset_from_json(nlohmann::json::parse(R"({"n":2,"p":"nope","points":[[0]]})")));
    CHECK_THROWS(fset_from_json(nlohmann::json::parse(R"({"n":2,"p":2,"points":[]})")));
  }
  SECTION("string round trip through dump/parse") {
    std::mt19937_64 rng(77);
    RunConfig cfg;
    cfg.n = 4;
    cfg.dim = 3;
    for (long k = 0; k < 100; ++k) {
      FSet s = sample_fset(cfg, Stratum::generic, k);
      FSet rt = fset_from_json(nlohmann::json::parse(fset_to_json(s).dump()));
      CHECK(rt == s);  // exact coordinates survive serialization
    }
  }
}

TEST_CASE("QuasiPath JSON wire format") {
  const NormSpec s1(2, 1);
  FSet x({{0.0}, {3.0}, {5.0}}, 3, s1);
  FSet y({{-1.0}, {1.0}, {4.0}}, 3, s1);
  QuasiPath g = quasigeodesic(x, y);
  nlohmann::json j = path_to_json(g);
  CHECK(j["legs"].size() == 2);
  CHECK(j["legs"][0]["t0"] == 0.0);
  CHECK(j["legs"][0]["t1"] == 0.5);
  QuasiPath back = path_from_json(nlohmann::json::parse(j.dump()));
  for (double t : {0.0, 0.25, 0.5, 0.8, 1.0}) {
    CHECK(back.eval(t) == g.eval(t));
  }
}
