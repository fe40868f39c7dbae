#include <doctest.h>

#include <string>

#include "jtmom/errors.hpp"
#include "jtmom/model_io.hpp"
#include "testutil.hpp"

using namespace jtmom;

namespace {

const char* kMinimal = R"({
  "variables": [{"name": "u", "cardinality": 2}, {"name": "v", "cardinality": 2}],
  "p_factors": [{"scope": ["u", "v"], "values": [0.1, 0.4, 0.2, 0.3]}],
  "h_factors": [{"scope": ["u", "v"], "values": [0, 1, 1, 2]}]
})";

}  // namespace

TEST_SUITE("model_io") {

TEST_CASE("the bundled golden chain file matches the fixture") {
  const Model file = load_model(std::string(JTMOM_MODELS_DIR) + "/m1.json");
  const Model fixture = jtt::golden_chain();
  REQUIRE(file.frames == fixture.frames);
  REQUIRE(file.variable_names == fixture.variable_names);
  REQUIRE(file.p_factors.size() == 2);
  REQUIRE(file.h_factors.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(file.p_factors[i] == fixture.p_factors[i]);
    CHECK(file.h_factors[i] == fixture.h_factors[i]);
  }
  CHECK(!file.tree.has_value());
}

TEST_CASE("scopes listed out of id order are permuted into canonical order") {
  const Model sorted = parse_model(kMinimal);
  // same table with scope (v, u): cells reordered as 00,10,01,11
  const Model swapped = parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}, {"name": "v", "cardinality": 2}],
    "p_factors": [{"scope": ["v", "u"], "values": [0.1, 0.2, 0.4, 0.3]}]
  })");
  CHECK(swapped.p_factors[0] == sorted.p_factors[0]);

  // three variables with mixed cardinalities
  const Model abc = parse_model(R"({
    "variables": [{"name": "a", "cardinality": 2}, {"name": "b", "cardinality": 3}],
    "p_factors": [{"scope": ["b", "a"], "values": [1, 2, 3, 4, 5, 6]}]
  })");
  // listed (b,a) layout: b rows, a fastest; canonical (a,b): a rows, b fastest
  const Table& t = abc.p_factors[0];
  CHECK(t.scope() == Scope{0, 1});
  CHECK(t.values()[0] == 1);  // a=0,b=0
  CHECK(t.values()[1] == 3);  // a=0,b=1
  CHECK(t.values()[2] == 5);  // a=0,b=2
  CHECK(t.values()[3] == 2);  // a=1,b=0
  CHECK(t.values()[4] == 4);
  CHECK(t.values()[5] == 6);
}

TEST_CASE("loader rejects malformed input") {
  CHECK_THROWS_AS(parse_model("not json"), ModelError);
  CHECK_THROWS_AS(parse_model("{}"), ModelError);
  CHECK_THROWS_AS(parse_model(R"({"variables": []})"), ModelError);
  // duplicate names
  CHECK_THROWS_AS(parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}, {"name": "u", "cardinality": 2}]
  })"), ModelError);
  // bad cardinality
  CHECK_THROWS_AS(parse_model(R"({
    "variables": [{"name": "u", "cardinality": 0}]
  })"), ModelError);
  // unknown scope variable
  CHECK_THROWS_AS(parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}],
    "p_factors": [{"scope": ["zz"], "values": [1, 1]}]
  })"), ModelError);
  // wrong value count
  CHECK_THROWS_AS(parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}],
    "p_factors": [{"scope": ["u"], "values": [1]}]
  })"), ModelError);
  // negative p
  CHECK_THROWS_AS(parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}],
    "p_factors": [{"scope": ["u"], "values": [-1, 2]}]
  })"), ModelError);
  // malformed tree edges
  CHECK_THROWS_AS(parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}],
    "p_factors": [{"scope": ["u"], "values": [1, 1]}],
    "tree": {"nodes": [["u"]], "edges": [[0]]}
  })"), ModelError);
}

TEST_CASE("prepare rejects unused variables and invalid trees") {
  const Model unused = parse_model(R"({
    "variables": [{"name": "u", "cardinality": 2}, {"name": "v", "cardinality": 2}],
    "p_factors": [{"scope": ["u"], "values": [0.5, 0.5]}]
  })");
  CHECK_THROWS_WITH_AS(prepare(unused),
                       "variable 'v' appears in no factor scope", ModelError);

  const Model bad =
      load_model(std::string(JTMOM_MODELS_DIR) + "/bad_rip.json");
  CHECK_THROWS_WITH_AS(
      prepare(bad),
      "invalid junction tree: running intersection violated for variable 'u'",
      ModelError);
}

TEST_CASE("report rendering is deterministic with 17 significant digits") {
  ResultReport report;
  report.algorithm = "ln";
  report.Z = 1.0;
  report.m = 1.0 / 3.0;
  report.stats = StatsReport{3, 2, 40};
  const std::string a = render_report(report);
  const std::string b = render_report(report);
  CHECK(a == b);
  CHECK(a ==
        "{\"algorithm\":\"ln\",\"Z\":1,\"m\":0.33333333333333331,"
        "\"stats\":{\"messages\":3,\"peak_live\":2,\"combine_ops\":40}}\n");

  ResultReport with_extras;
  with_extras.algorithm = "all-vertices";
  with_extras.Z = 1.0;
  with_extras.m = 2.0;
  with_extras.per_node_marginals = {{{"u", "v"}, {0.25, 0.25, 0.25, 0.25}}};
  with_extras.conditional = ConditionalReport{{"v"}, {0.5, 1.5}};
  const std::string c = render_report(with_extras);
  CHECK(c ==
        "{\"algorithm\":\"all-vertices\",\"Z\":1,\"m\":2,"
        "\"per_node_marginals\":[{\"node\":[\"u\",\"v\"],"
        "\"values\":[0.25,0.25,0.25,0.25]}],"
        "\"conditional\":{\"scope\":[\"v\"],\"expectation\":[0.5,1.5]}}\n");

  // every rendered number round-trips
  const double tricky = 0.1 + 0.2;
  ResultReport rt;
  rt.algorithm = "x";
  rt.Z = tricky;
  rt.m = 1.875;
  const std::string s = render_report(rt);
  const auto z_pos = s.find("\"Z\":") + 4;
  const double parsed = std::stod(s.substr(z_pos));
  CHECK(parsed == tricky);
}

TEST_CASE("all bundled models load, validate and agree across strategies") {
  for (const char* name : {"m1.json", "chain5.json", "star4.json"}) {
    const Model m = load_model(std::string(JTMOM_MODELS_DIR) + "/" + name);
    const PreparedModel prep = prepare(m);
    CHECK(validate(prep.tree).ok);
    CHECK(approx_equal(jtt::oracle_mass(m), 1.0, 1e-9));
    const double want = jtt::oracle_moment(m);
    CHECK(approx_equal(moment_ln(prep).m, want, 1e-9));
    CHECK(approx_equal(moment_maua(prep).m, want, 1e-9));
    CHECK(approx_equal(moment_all_vertices(prep).m, want, 1e-9));
    CHECK(approx_equal(brute_force_moment(m), want, 1e-12));
  }
}

}  // TEST_SUITE
