#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "qseries/cli.hpp"

using qseries::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("expand prints the truncated series") {
  const Run r = run({"expand", "phi(1)", "--order", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == "1 + 2 q + 2 q^4\n");
}

TEST_CASE("expand as json lists exact terms") {
  const Run r = run({"--format", "json", "expand", "psi(1)^2", "-n", "4"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["order"] == "4");
  REQUIRE(j["terms"].size() == 4);
  CHECK(j["terms"][1]["exponent"] == "1");
  CHECK(j["terms"][1]["coefficient"] == "2");
}

TEST_CASE("verify reports pass and exits 0") {
  const Run r = run({"verify", "R-TD", "--order", "40"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pass") != std::string::npos);
}

TEST_CASE("json reports carry every field") {
  const Run r = run({"verify", "R-23-printed", "--format", "json", "--order", "30"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.is_array());
  for (const char* key : {"id", "ref", "quote", "order", "status", "first_fail_exponent", "discrepancy",
                          "elapsed_ms", "expected", "instance", "message"}) {
    CAPTURE(key);
    CHECK(j[0].contains(key));
  }
  CHECK(j[0]["status"] == "fail");
  CHECK(j[0]["expected"] == "flagged-as-printed");
  CHECK(j[0]["first_fail_exponent"] == "0");
}

TEST_CASE("numeric samples are attached to the json output") {
  const Run r = run({"verify", "R-MEQ5", "--format", "json", "--order", "30", "--numeric-q", "0.1"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.contains("numeric"));
  CHECK(j["numeric"][0]["status"] == "pass");
}

TEST_CASE("exit codes") {
  CHECK(run({"verify", "no-such-id"}).code == 2);
  CHECK(run({"--granularity", "3", "expand", "phi(1)"}).code == 2);
  CHECK(run({"--bogus", "verify-all"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"expand", "phi(1"}).code == 1);
  CHECK(run({"corpus-lint"}).code == 0);
  CHECK(run({"--registry", "/nonexistent/registry.json", "corpus-lint"}).code == 2);
}

TEST_CASE("verify-all with a filter") {
  const Run r = run({"verify-all", "--id", "R-JTP", "--quiet"});
  CHECK(r.code == 0);
  CHECK(r.out.find("1 record(s)") != std::string::npos);
}
