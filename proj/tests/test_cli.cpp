#include <doctest.h>

#include <cstdio>
#include <regex>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(NORMOPT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) {
    r.output.append(buf, n);
  }
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data_file(const std::string& name) {
  return std::string("\"") + NORMOPT_DATA_DIR + "/" + name + "\"";
}

std::string strip_timestamp(const std::string& text) {
  static const std::regex ts("\"timestamp\": \"[^\"]*\"");
  return std::regex_replace(text, ts, "\"timestamp\": \"-\"");
}

}  // namespace

TEST_CASE("norm command reports the ladder estimate") {
  RunResult r = run_cli("norm " + data_file("novo1.json"));
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["command"] == "norm");
  CHECK(j["results"]["estimate"]["value"].get<double>() ==
        doctest::Approx(256.0 / 257.0));
  auto sections = j["results"]["sections"];
  REQUIRE(sections.size() == 8);
  CHECK(sections[0]["value"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(sections[2]["value"].get<double>() == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("norm on the identity and a dense row") {
  RunResult id = run_cli("norm " + data_file("identity4.json"));
  REQUIRE(id.exit_code == 0);
  CHECK(nlohmann::json::parse(id.output)["results"]["estimate"]["value"]
            .get<double>() == doctest::Approx(1));

  RunResult row = run_cli("norm " + data_file("row_sum.json"));
  REQUIRE(row.exit_code == 0);
  CHECK(nlohmann::json::parse(row.output)["results"]["estimate"]["value"]
            .get<double>() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("explicit and interleaved spec kinds through the CLI") {
  RunResult halving = run_cli("norm " + data_file("halving.json"));
  REQUIRE(halving.exit_code == 0);
  CHECK(nlohmann::json::parse(halving.output)["results"]["estimate"]["value"]
            .get<double>() == doctest::Approx(1));

  // interleaving moves rows but preserves every section norm
  RunResult shifted = run_cli("norm " + data_file("novo1_shift.json") +
                              " --ladder 2,4,8,16,32");
  REQUIRE(shifted.exit_code == 0);
  auto j = nlohmann::json::parse(shifted.output);
  CHECK(j["results"]["estimate"]["value"].get<double>() ==
        doctest::Approx(32.0 / 33.0).epsilon(1e-9));

  CHECK(run_cli("diagnose " + data_file("halving.json")).exit_code == 0);
}

TEST_CASE("diagnose exit codes encode the verdict") {
  CHECK(run_cli("diagnose " + data_file("novo1.json") + " --q 3").exit_code ==
        3);
  CHECK(run_cli("diagnose " + data_file("reciprocal.json")).exit_code == 0);
  RunResult p1 = run_cli("diagnose " + data_file("novo1.json") + " --p 1");
  CHECK(p1.exit_code == 2);
  CHECK(p1.output.find("demo-p1") != std::string::npos);
  // a window wider than the deepest section cannot certify the escape
  CHECK(run_cli("diagnose " + data_file("novo1.json") + " --window 1000")
            .exit_code == 4);
}

TEST_CASE("diagnose reports the attainer for the reciprocal diagonal") {
  RunResult r = run_cli("diagnose " + data_file("reciprocal.json"));
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j["results"]["report"]["verdict"] == "attains");
  auto attainer = j["results"]["report"]["attainer"];
  REQUIRE(attainer.is_array());
  CHECK(attainer[0].get<double>() == doctest::Approx(1));
}

TEST_CASE("malformed specs exit 2 with a schema message") {
  RunResult r = run_cli("diagnose " + data_file("malformed.json"));
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("diagonal rule") != std::string::npos);

  RunResult missing = run_cli("norm /nonexistent/spec.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("verify suites") {
  CHECK(run_cli("verify scalar").exit_code == 0);
  CHECK(run_cli("verify precompact").exit_code == 0);
  RunResult unknown = run_cli("verify bogus");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("demo-p1 prints the escaping trace without a verdict") {
  RunResult r = run_cli("demo-p1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("p = 1") != std::string::npos);
  CHECK(r.output.find("e_256") != std::string::npos);
  CHECK(r.output.find("maximizing without attaining") != std::string::npos);
  CHECK(r.output.find("does_not_attain") == std::string::npos);
  CHECK(r.output.find("inconclusive") == std::string::npos);
}

TEST_CASE("reports are byte-identical for a fixed seed, timestamps aside") {
  std::string args = "diagnose " + data_file("novo1_pair.json") + " --seed 7";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == b.exit_code);
  CHECK(strip_timestamp(a.output) == strip_timestamp(b.output));
  CHECK(a.output.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("csv trace export") {
  RunResult r =
      run_cli("norm " + data_file("novo1.json") + " --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("section,value,coord_index_1,coord_1", 0) == 0);
  CHECK(r.output.find("\n2,0.66666666666666663,2,1,0,0,0,0,0,0\n") !=
        std::string::npos);
}
