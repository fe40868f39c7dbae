// Drives the installed CLI binary end to end.

#include <doctest.h>

#include <fstream>
#include <string>

#include "testutil.hpp"

namespace {

const std::string kCli = JTMOM_CLI_PATH;
const std::string kModels = JTMOM_MODELS_DIR;

std::string m1() { return kModels + "/m1.json"; }

double field(const std::string& report, const std::string& key) {
  const auto pos = report.find("\"" + key + "\":");
  REQUIRE(pos != std::string::npos);
  return std::stod(report.substr(pos + key.size() + 3));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("brute force on the golden chain") {
  const auto r = jtt::run_command(kCli + " --model " + m1() +
                                  " --algorithm brute-force 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(jtmom::approx_equal(field(r.output, "m"), 1.875, 1e-12));
}

TEST_CASE("all four strategies print the same moment on every bundled model") {
  for (const char* model : {"m1.json", "chain5.json", "star4.json"}) {
    double first = 0.0;
    bool have_first = false;
    for (const char* alg : {"ln", "maua", "all-vertices", "brute-force"}) {
      const auto r =
          jtt::run_command(kCli + " --model " + kModels + "/" + model +
                           " --algorithm " + alg + " 2>/dev/null");
      CHECK(r.exit_code == 0);
      const double m = field(r.output, "m");
      if (have_first) CHECK(jtmom::approx_equal(m, first, 1e-9));
      first = m;
      have_first = true;
    }
  }
}

TEST_CASE("reports are byte-identical across runs") {
  for (const char* alg : {"ln", "maua", "all-vertices", "brute-force"}) {
    const std::string cmd = kCli + " --model " + m1() + " --algorithm " + alg +
                            " --stats 2>/dev/null";
    const auto first = jtt::run_command(cmd);
    const auto second = jtt::run_command(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(!first.output.empty());
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(jtt::run_command(kCli + " --model " + m1() +
                         " --algorithm ln --algorithm 2>/dev/null")
            .exit_code == 1);
  CHECK(jtt::run_command(kCli + " --model " + m1() + " --bogus 2>/dev/null")
            .exit_code == 1);
  CHECK(jtt::run_command(kCli + " --model " + m1() +
                         " --algorithm nope 2>/dev/null")
            .exit_code == 1);
  CHECK(jtt::run_command(kCli + " --model " + m1() + " 2>/dev/null")
            .exit_code == 1);
}

TEST_CASE("validation failures exit 2 and name the variable") {
  const auto r = jtt::run_command(kCli + " --model " + kModels +
                                  "/bad_rip.json --validate-only 2>&1");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("'u'") != std::string::npos);

  CHECK(jtt::run_command(kCli +
                         " --model /nonexistent.json --algorithm ln 2>/dev/null")
            .exit_code == 2);
  CHECK(jtt::run_command(kCli + " --model " + m1() +
                         " --algorithm ln --root 7 2>/dev/null")
            .exit_code == 2);
  CHECK(jtt::run_command(kCli + " --model " + m1() +
                         " --algorithm ln --query nope 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("validate-only reports zero counters") {
  const auto r = jtt::run_command(kCli + " --model " + m1() +
                                  " --validate-only 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "{\"validated\":true,\"nodes\":2,\"edges\":1,"
        "\"stats\":{\"messages\":0,\"peak_live\":0,\"combine_ops\":0}}\n");
}

TEST_CASE("enumeration cap exits 3") {
  // 21 independent binary coins: 2^21 joint configurations
  std::string doc = R"({"variables": [)";
  for (int i = 0; i < 21; ++i) {
    if (i) doc += ',';
    doc += "{\"name\": \"x" + std::to_string(i) + "\", \"cardinality\": 2}";
  }
  doc += R"(], "p_factors": [)";
  for (int i = 0; i < 21; ++i) {
    if (i) doc += ',';
    doc += "{\"scope\": [\"x" + std::to_string(i) +
           "\"], \"values\": [0.5, 0.5]}";
  }
  doc += "]}";
  const std::string path = "/tmp/jtmom_cap_test.json";
  std::ofstream(path) << doc;
  CHECK(jtt::run_command(kCli + " --model " + path +
                         " --algorithm brute-force 2>/dev/null")
            .exit_code == 3);
  // the message-passing strategies handle it fine
  const auto r = jtt::run_command(kCli + " --model " + path +
                                  " --algorithm maua 2>/dev/null");
  CHECK(r.exit_code == 0);
  CHECK(jtmom::approx_equal(field(r.output, "Z"), 1.0, 1e-9));
}

TEST_CASE("query output matches the enumerated conditional expectation") {
  const jtmom::Model m = jtt::golden_chain();
  const auto mc = jtt::oracle_moment_potential(m, jtmom::Scope{1});
  const auto pc = jtt::oracle_p_marginal(m, jtmom::Scope{1});
  for (const char* alg : {"ln", "brute-force"}) {
    const auto r =
        jtt::run_command(kCli + " --model " + m1() + " --algorithm " + alg +
                         " --query v 2>/dev/null");
    CHECK(r.exit_code == 0);
    const auto pos = r.output.find("\"expectation\":[");
    REQUIRE(pos != std::string::npos);
    const std::string tail = r.output.substr(pos + 15);
    const double first = std::stod(tail);
    const double second = std::stod(tail.substr(tail.find(',') + 1));
    CHECK(jtmom::approx_equal(first, mc[0] / pc[0], 1e-9));
    CHECK(jtmom::approx_equal(second, mc[1] / pc[1], 1e-9));
  }
}

TEST_CASE("unnormalized models trigger a warning but still run") {
  const std::string path = "/tmp/jtmom_unnormalized.json";
  std::ofstream(path) << R"({
    "variables": [{"name": "u", "cardinality": 2}],
    "p_factors": [{"scope": ["u"], "values": [1.0, 1.0]}],
    "h_factors": [{"scope": ["u"], "values": [0.0, 1.0]}]
  })";
  const auto r =
      jtt::run_command(kCli + " --model " + path + " --algorithm ln 2>&1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("warning") != std::string::npos);
  CHECK(jtmom::approx_equal(field(r.output, "Z"), 2.0, 1e-12));
  CHECK(jtmom::approx_equal(field(r.output, "m"), 0.5, 1e-12));
}

}  // TEST_SUITE
