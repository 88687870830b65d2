#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using tricolor::cli::run;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  const char* dir = std::getenv("TRICOLOR_TEST_DATA");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

// Run reports minus the timing, which is the only field allowed to vary.
Json without_time(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("wall_ms");
  if (j.contains("stats") && j["stats"].is_object()) j["stats"].erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("exit codes follow the result") {
  CHECK(call({"color", data("k4.col")}).code == 1);
  CHECK(call({"edge-color", data("k4.col"), "--verify"}).code == 0);
  CHECK(call({"edge-color", data("petersen.col")}).code == 1);
  CHECK(call({"sat", data("example.cnf"), "--verify"}).code == 0);
  CHECK(call({"csp", "solve", data("dense.json"), "--node-limit", "1"}).code == 3);
}

TEST_CASE("usage and input errors exit with 2 and explain themselves") {
  const Run missing = call({"color"});
  CHECK(missing.code == 2);
  const Run malformed = call({"color", data("malformed.col")});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line 3, column 5") != std::string::npos);
  CHECK(call({"color", data("no-such-file.col")}).code == 2);
  CHECK(call({"--mode", "fast", "color", data("k4.col")}).code == 2);
  CHECK(call({"fuzz", "nonsense"}).code == 2);
  CHECK(call({"fuzz", "sat:q=1"}).code == 2);
}

TEST_CASE("the JSON report is complete and deterministic") {
  const std::vector<std::string> args{"--json", "--stats", "sat", data("example.cnf"), "--verify"};
  const Run a = call(args), b = call(args);
  REQUIRE(a.code == 0);
  const Json report = Json::parse(a.out);
  for (const char* key : {"tool", "version", "command", "input", "mode", "solver", "seed", "node_limit", "result",
                          "solution", "verified", "stats", "wall_ms"}) {
    CHECK(report.contains(key));
  }
  CHECK(report["result"] == "sat");
  CHECK(report["verified"] == true);
  CHECK(without_time(a.out) == without_time(b.out));
}

TEST_CASE("text output names the result and the solution") {
  const Run r = call({"csp", "solve", data("triangle.json"), "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: sat") != std::string::npos);
  CHECK(r.out.find("verified: yes") != std::string::npos);
}

TEST_CASE("the oracle and the solver agree on the sample inputs") {
  for (const auto& [kind, cmd, file] : std::vector<std::tuple<std::string, std::vector<std::string>, std::string>>{
           {"color", {"color"}, "petersen.col"},
           {"edge-color", {"edge-color"}, "petersen.col"},
           {"sat", {"sat"}, "example.cnf"},
           {"csp", {"csp", "solve"}, "triangle.json"}}) {
    std::vector<std::string> solver = cmd;
    solver.push_back(data(file));
    CHECK(call({"oracle", kind, data(file)}).code == call(solver).code);
  }
}

TEST_CASE("randomized mode reports solutions or gives up, never unsat") {
  const Run r = call({"--mode", "rand", "--seed", "3", "csp", "solve", data("triangle.json"), "--verify"});
  CHECK(r.code == 0);
  const Run e = call({"--mode", "rand", "edge-color", data("k4.col"), "--verify"});
  CHECK(e.code == 0);
}

TEST_CASE("translate emits inputs the other commands accept") {
  const Run csp = call({"translate", "sat", data("example.cnf")});
  REQUIRE(csp.code == 0);
  CHECK(Json::parse(csp.out).contains("variables"));
  const Run source = call({"translate", "color", data("k4.col"), "--emit", "source"});
  REQUIRE(source.code == 0);
  CHECK(source.out.find("p edge 4 6") != std::string::npos);
  const Run dual = call({"translate", "dual", data("triangle.json")});
  CHECK(dual.code == 0);
}

TEST_CASE("factors reports the main constants") {
  const Run r = call({"factors", "--json"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["lambda_4455"].get<double>() == doctest::Approx(1.3644301).epsilon(1e-6));
  CHECK(j["rules"].size() > 5);
  CHECK(call({"factors"}).out.find("lambda") != std::string::npos);
}

TEST_CASE("fuzz and bench run generated batches") {
  const Run fuzz = call({"--json", "fuzz", "csp:n=6,count=30"});
  CHECK(fuzz.code == 0);
  CHECK(Json::parse(fuzz.out)["failures"] == 0);
  const Run parallel = call({"--json", "fuzz", "csp:n=6,count=30", "--jobs", "3"});
  CHECK(Json::parse(parallel.out) == Json::parse(fuzz.out));
  const Run bench = call({"bench", "planted-color:n=20,count=3"});
  CHECK(bench.code == 0);
  CHECK(bench.out.find("3 instances") != std::string::npos);
}
