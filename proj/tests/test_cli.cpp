#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Run a shell command, capturing stdout+stderr and the exit status.
RunResult run(const std::string& cmd) {
  static int counter = 0;
  const std::string path = "/tmp/robba_cli_capture_" +
                           std::to_string(::getpid()) + "_" +
                           std::to_string(counter++) + ".txt";
  const int raw = std::system((cmd + " > " + path + " 2>&1").c_str());
  RunResult r;
  if (raw != -1 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(path.c_str());
  return r;
}

RunResult cli(const std::string& args) {
  return run(std::string(ROBBA_CLI_PATH) + " " + args);
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Validate a JSON document against one of the shipped schemas.
bool schema_valid(const std::string& doc, const std::string& schema_name) {
  static int counter = 0;
  const std::string path = "/tmp/robba_cli_doc_" + std::to_string(::getpid()) +
                           "_" + std::to_string(counter++) + ".json";
  {
    std::ofstream out(path);
    out << doc;
  }
  const std::string schema = std::string(ROBBA_SOURCE_DIR) +
                             "/docs/schema/" + schema_name + ".json";
  const RunResult r = run(
      "python3 -c \"import json, jsonschema, sys; "
      "jsonschema.validate(json.load(open(sys.argv[1])), "
      "json.load(open(sys.argv[2])))\" " +
      path + " " + schema);
  std::remove(path.c_str());
  return r.code == 0;
}

}  // namespace

TEST_CASE("gseries: congruences hold and the text verdict is printed") {
  RunResult r = cli("gseries --p 3 --r 1 --n-max 2 --depth 4 --check");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "all congruences hold"));
  CHECK(contains(r.out, "congruence n=2 mod phi_2^2"));
  CHECK(contains(r.out, "target 1/9"));
}

TEST_CASE("gseries: json output matches the published schema") {
  RunResult r = cli("gseries --p 5 --r 2 --n-max 1 --format json");
  CHECK(r.code == 0);
  CHECK(schema_valid(r.out, "gseries"));
  json doc = json::parse(r.out);
  CHECK(doc["command"] == "gseries");
  CHECK(doc["depth"] == 3);
  CHECK(doc["all_hold"] == true);
  CHECK(doc["congruences"][0]["target"] == "1/5");
  CHECK(doc["congruences"][0]["modulus_degree"] == 12);
}

TEST_CASE("gseries: usage and budget failures exit nonzero") {
  CHECK(cli("gseries --p 3 --r 1 --n-max 0").code != 0);
  CHECK(cli("gseries --p 9 --r 1 --n-max 1").code != 0);
  CHECK(cli("gseries --p 3 --r 1").code != 0);  // missing required flag
  RunResult budget =
      run(std::string("ROBBA_BUDGET_CAP=10 ") + ROBBA_CLI_PATH +
          " gseries --p 3 --r 1 --n-max 1");
  CHECK(budget.code == 3);
  CHECK(contains(budget.out, "ROBBA_BUDGET_CAP"));
}

TEST_CASE("limit: round trip and convergence certificates") {
  RunResult r = cli("limit --p 5 --k 4 --L 0 --n-max 5 --check");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "round trip ok"));
  CHECK(contains(r.out, "type semistable-noncrystalline"));
  CHECK(contains(r.out, "defect exponents weakly increasing: yes"));
}

TEST_CASE("limit: the infinite parameter degenerates to a crystalline point") {
  RunResult r = cli("limit --p 3 --k 3 --L inf --n-max 3 --check");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "type crystalline"));
  CHECK(contains(r.out, "recovered L = inf"));
}

TEST_CASE("limit: json output matches the published schema") {
  RunResult r = cli("limit --p 5 --k 4 --L 2+1*pi --n-max 4 --format json");
  CHECK(r.code == 0);
  CHECK(schema_valid(r.out, "limit"));
  json doc = json::parse(r.out);
  CHECK(doc["round_trip"] == true);
  CHECK(doc["gaps_weakly_increasing"] == true);
  CHECK(doc["rows"].size() == 4);
  // Exact defect exponents for this family: n + 2 on both coordinates.
  for (long n = 1; n <= 4; ++n) {
    const json& row = doc["rows"][static_cast<std::size_t>(n - 1)];
    CHECK(row["third_defect"]["exact"] == true);
    CHECK(row["third_defect"]["v"] == std::to_string(n + 2));
    CHECK(row["fourth_defect"]["exact"] == true);
    CHECK(row["fourth_defect"]["v"] == std::to_string(n + 2));
  }
}

TEST_CASE("limit: bad arguments are rejected") {
  CHECK(cli("limit --p 4 --k 4 --L 0").code != 0);
  CHECK(cli("limit --p 5 --k 2 --L 0").code == 3);
  CHECK(cli("limit --p 5 --k 4 --L abc").code == 3);
}

TEST_CASE("classify: golden reducible row with unramified twist data") {
  RunResult r = cli("classify --p 5 --k 4 --L 0 --full --check");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "nu = 0"));
  CHECK(contains(r.out, "omega^2 (+) omega^1"));
  CHECK(contains(r.out, "lambda = 3"));
  CHECK(contains(r.out, "[unconditional]"));
  CHECK(contains(r.out, "all checks hold"));
}

TEST_CASE("classify: golden irreducible row") {
  RunResult r = cli("classify --p 7 --k 5 --L 0 --format json");
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["nu"] == "0");
  CHECK(doc["shape"]["kind"] == "irreducible");
  CHECK(doc["shape"]["c"] == 10);
  CHECK(doc["shape"]["conditional"] == false);
}

TEST_CASE("classify: table and zigzag json match the published schema") {
  RunResult r =
      cli("classify --p 5 --k 6 --L 1/3 --table --check --n-max 3 --format json");
  CHECK(r.code == 0);
  CHECK(schema_valid(r.out, "classify"));
  json doc = json::parse(r.out);
  CHECK(doc["checks"]["bm_matches"] == true);
  CHECK(doc["table"].size() == 7);
  CHECK(doc["table"][0]["region"] == "crystalline-pole");
  CHECK(doc["table"][0]["shape"]["basis"] == "fontaine-edixhoven");
}

TEST_CASE("classify: zigzag marks the unreached regime") {
  RunResult r = cli("classify --p 3 --k 3 --L inf --n-max 2 --format json");
  CHECK(r.code == 0);
  CHECK(schema_valid(r.out, "classify"));
  json doc = json::parse(r.out);
  CHECK(doc["zigzag"][0]["regime_not_reached"] == true);
  CHECK(doc["zigzag"][1]["tau"] == "3/2");
  CHECK(doc["zigzag"][1]["t"] == "4");
}

TEST_CASE("classify: odd-weight cross-parameterization check passes") {
  RunResult r = cli("classify --p 7 --k 5 --L 5/2+pi --full --check");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "nu = 1/2"));
  CHECK(contains(r.out, "omega^2 (+) omega^2"));
  CHECK(contains(r.out, "trace = 2 (split)"));
  CHECK(contains(r.out, "all checks hold"));
}

TEST_CASE("classify: out-of-range weights are rejected") {
  CHECK(cli("classify --p 3 --k 6 --L 0").code == 3);
  CHECK(cli("classify --p 7 --k 6 --L 0 --full").code == 3);
  CHECK(cli("classify --p 9 --k 4 --L 0").code != 0);
}
