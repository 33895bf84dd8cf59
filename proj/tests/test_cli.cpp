#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd =
      std::string("\"") + TPS_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST_CASE("analyze reports the frozen invariants as json") {
  auto res = run_cli("analyze " + quoted(testsupport::fixture_path("segre")) +
                     " --output json");
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["m"] == 1);
  CHECK(j["n"] == 1);
  CHECK(j["r"] == 0);
  CHECK(j["mu0"] == 1);
  CHECK(j["field"] == "rational");
  CHECK(j.contains("lq_table"));
  CHECK(j["violations"].empty());
}

TEST_CASE("json output is byte identical across reruns") {
  std::string args = "matrix " + quoted(testsupport::fixture_path("sextic")) +
                     " --mu 2 --output json";
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["determinant"] ==
        "x0^2*x3^4 + 1/4*x1^2*x3^4 - 16*x2^6 - 8*x2^3*x3^3 - x3^6");
  CHECK(j["oracle"]["match"] == true);
  CHECK(j["oracle"]["power"] == 1);
}

TEST_CASE("text output of a one by one matrix shows the quadric") {
  auto res =
      run_cli("matrix " + quoted(testsupport::fixture_path("segre")) + " --mu 1");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("x0*x3 - x1*x2") != std::string::npos);
  CHECK(res.out.find("oracle check: PASS") != std::string::npos);
}

TEST_CASE("prime field run matches the rational invariants") {
  auto res = run_cli("analyze " + quoted(testsupport::fixture_path("septic")) +
                     " --field fp --output json");
  REQUIRE(res.code == 0);
  auto j = nlohmann::json::parse(res.out);
  CHECK(j["field"] == "fp");
  CHECK(j["r"] == 1);
  CHECK(j["mu0"] == 3);
}

TEST_CASE("exit codes separate usage, input and verification failures") {
  // required option missing: a usage error
  CHECK(run_cli("planes " + quoted(testsupport::fixture_path("segre"))).code ==
        1);
  // unreadable input file
  CHECK(run_cli("analyze /nonexistent/surface.json").code == 1);
  // --prime only makes sense over fp
  CHECK(run_cli("analyze " + quoted(testsupport::fixture_path("segre")) +
                " --prime 2305843009213693951")
            .code == 1);
  // a form that does not vanish on the surface
  auto bad = run_cli("verify " + quoted(testsupport::fixture_path("segre")) +
                     " --form \"x0*x3 + x1*x2\" --output json");
  CHECK(bad.code == 2);
  auto jb = nlohmann::json::parse(bad.out);
  CHECK(jb["verdict"] == false);
  CHECK(jb["failures"] > 0);
  // and the honest one passes
  auto good = run_cli("verify " + quoted(testsupport::fixture_path("segre")) +
                      " --form \"x0*x3 - x1*x2\"");
  CHECK(good.code == 0);
}
