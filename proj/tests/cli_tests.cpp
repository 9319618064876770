// Drives the installed binary end to end; PROJORB_CLI_PATH is injected by the
// build so the tests always exercise the executable they were built with.
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

CmdResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + "'" + PROJORB_CLI_PATH + "' " + args + " 2>&1";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::stringstream ss(text);
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& csv_line) {
  std::vector<std::string> fields;
  std::string f;
  std::stringstream ss(csv_line);
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("verify passes at the hyperbolic point") {
  auto r = run_cli("verify --wxyz 3,3,3,3");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(contains(r.output, "backend: rational"));
  REQUIRE(contains(r.output, "[pass] on trace variety"));
  REQUIRE(contains(r.output, "[pass] cusp type (standard)"));
  REQUIRE(contains(r.output, "[pass] edge cycle degree (degree = 1)"));
  REQUIRE(contains(r.output, "overall: PASS"));
}

TEST_CASE("verify reports every failure at the branched fixed point") {
  auto r = run_cli("verify --wxyz 1,1,1,1");
  INFO(r.output);
  REQUIRE(r.exit_code == 1);
  // the point is on the variety and satisfies the relations ...
  REQUIRE(contains(r.output, "[pass] on trace variety"));
  REQUIRE(contains(r.output, "[pass] generator relations"));
  // ... but sits on the wrong component, with the doubled edge cycle
  REQUIRE(contains(r.output, "[fail] edge cycle degree (degree = 2)"));
  REQUIRE(contains(r.output, "[fail] component (Branched)"));
  REQUIRE(contains(r.output, "[fail] cusp type (off-component)"));
  REQUIRE(contains(r.output, "overall: FAIL"));
}

TEST_CASE("verify short-circuits checks that need the variety") {
  auto r = run_cli("verify --wxyz 0,0,0,0");
  INFO(r.output);
  REQUIRE(r.exit_code == 1);
  REQUIRE(contains(r.output, "[fail] on trace variety"));
  REQUIRE(contains(r.output, "[skip] component (point is off the trace variety)"));
  REQUIRE(contains(r.output, "[skip] parameter relation"));
  REQUIRE(!contains(r.output, "[fail] component"));
}

TEST_CASE("verify accepts all three point parameterizations") {
  auto by_chart = run_cli("verify --chart 4,3");
  auto by_wxyz = run_cli("verify --wxyz 16/5,4,3,12/5");
  auto by_affine = run_cli("verify --affine 4,3,1,4/5");
  for (const auto& r : {by_chart, by_wxyz, by_affine}) {
    INFO(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(contains(r.output, "point: w=16/5 x=4 y=3 z=12/5"));
    REQUIRE(contains(r.output, "[pass] cusp type (generalized)"));
  }
}

TEST_CASE("decimal input routes to the float backend") {
  auto r = run_cli("verify --chart 3.2,2.4");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(contains(r.output, "backend: float"));

  auto forced = run_cli("verify --wxyz 3,3,3,3 --backend float");
  REQUIRE(forced.exit_code == 0);
  REQUIRE(contains(forced.output, "backend: float"));

  auto forced_exact = run_cli("--backend rational verify --chart 2.5,2.5");
  REQUIRE(forced_exact.exit_code == 0);
  REQUIRE(contains(forced_exact.output, "backend: rational"));
}

TEST_CASE("verify emits machine-readable JSON") {
  auto r = run_cli("--json verify --chart 4,3");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["command"] == "verify");
  REQUIRE(j["backend"] == "rational");
  REQUIRE(j["point"]["w"] == "16/5");
  REQUIRE(j["affine"]["b4"] == "4/5");
  REQUIRE(j["component"] == "X");
  REQUIRE(j["cusp"] == "generalized");
  REQUIRE(j["checks"].size() == 9);
  for (const auto& c : j["checks"]) REQUIRE(c["status"] == "pass");
  REQUIRE(j["overall"] == "pass");

  auto f = run_cli("--json verify --wxyz 1,1,1,1");
  REQUIRE(f.exit_code == 1);
  auto jf = nlohmann::json::parse(f.output);
  REQUIRE(jf["overall"] == "fail");
  REQUIRE(jf["component"] == "Branched");
}

TEST_CASE("usage errors exit with code 2") {
  REQUIRE(run_cli("").exit_code == 2);
  REQUIRE(run_cli("frobnicate").exit_code == 2);
  REQUIRE(run_cli("verify").exit_code == 2);
  REQUIRE(run_cli("verify --wxyz 1,2").exit_code == 2);
  REQUIRE(run_cli("verify --wxyz 1,1,1,1 --chart 3,3").exit_code == 2);
  REQUIRE(run_cli("verify --wxyz 1,bogus,1,1").exit_code == 2);
  REQUIRE(run_cli("scan --x 2-4").exit_code == 2);
  REQUIRE(run_cli("--backend quantum verify --wxyz 3,3,3,3").exit_code == 2);
  REQUIRE(run_cli("--help").exit_code == 0);
}

TEST_CASE("scan tabulates a grid inside the structure component") {
  auto r = run_cli("scan --x 2.5:3.5 --y 2.5:3.5 --steps 5");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 26);
  REQUIRE(lines[0] == "x,y,w,z,component,disc,degree,cusp,lambda1,lambda2,lambda3");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    INFO(lines[i]);
    REQUIRE(lines[i][0] != '#');
    auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 11);
    REQUIRE(f[4] == "X");
    REQUIRE(std::stod(f[5]) >= 0.0);
    REQUIRE(f[6] == "1");
    REQUIRE((f[7] == "standard" || f[7] == "generalized"));
    // eigenvalues are positive, descending, with product one
    double l1 = std::stod(f[8]), l2 = std::stod(f[9]), l3 = std::stod(f[10]);
    REQUIRE(l1 >= l2);
    REQUIRE(l2 >= l3);
    REQUIRE(l3 > 0.0);
    REQUIRE(std::abs(l1 * l2 * l3 - 1.0) < 1e-9);
  }
}

TEST_CASE("scan output is byte-deterministic") {
  auto a = run_cli("scan --x 2.5:3.5 --y 2.5:3.5 --steps 5");
  auto b = run_cli("scan --x 2.5:3.5 --y 2.5:3.5 --steps 5");
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.output == b.output);
}

TEST_CASE("scan marks the parabolic point with unit eigenvalues") {
  auto r = run_cli("scan --x 3:3 --y 3:3 --steps 1");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  auto f = fields_of(lines[1]);
  REQUIRE(f[5] == "0");
  REQUIRE(f[7] == "standard");
  REQUIRE(f[8] == "1");
  REQUIRE(f[9] == "1");
  REQUIRE(f[10] == "1");
}

TEST_CASE("scan skips the singular chart locus with a comment") {
  auto r = run_cli("scan --x 2:2 --y 2:2 --steps 1");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 2);
  REQUIRE(lines[1] == "# skipped x=2 y=2 (chart singular locus)");
}

TEST_CASE("scan writes to a file and fails cleanly on a bad path") {
  std::string path = "/tmp/projorb_cli_scan_test.csv";
  std::remove(path.c_str());
  auto r = run_cli("scan --x 3:4 --y 3:4 --steps 2 --out " + path);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "x,y,w,z,component,disc,degree,cusp,lambda1,lambda2,lambda3");
  std::remove(path.c_str());

  auto bad = run_cli("scan --steps 2 --out /nonexistent-dir/out.csv");
  REQUIRE(bad.exit_code == 3);
  REQUIRE(contains(bad.output, "cannot open"));
}

TEST_CASE("alt5 reports the order-60 tessellation") {
  auto r = run_cli("alt5");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(contains(r.output, "group order: 60"));
  REQUIRE(contains(r.output, "simplex orbit size: 15"));
  REQUIRE(contains(r.output, "simplex stabilizer order: 4"));
  REQUIRE(contains(r.output, "a-axis edge: 3"));
  REQUIRE(contains(r.output, "b-axis edge: 3"));
  REQUIRE(contains(r.output, "c-axis edge: 6"));
  REQUIRE(contains(r.output, "overall: PASS"));

  auto j = nlohmann::json::parse(run_cli("--json alt5").output);
  REQUIRE(j["group_order"] == 60);
  REQUIRE(j["orbit_size"] == 15);
  REQUIRE(j["stabilizer_size"] == 4);
  REQUIRE(j["adjacent_a_axis"] == 3);
  REQUIRE(j["adjacent_b_axis"] == 3);
  REQUIRE(j["adjacent_c_axis"] == 6);
  REQUIRE(j["overall"] == "pass");
}

TEST_CASE("alt5 detects a corrupted representation") {
  auto r = run_cli("alt5", "PROJORB_TEST_MUTATE_ALT5=1 ");
  INFO(r.output);
  REQUIRE(r.exit_code == 1);
  REQUIRE(contains(r.output, "error:"));
}

TEST_CASE("cert-hyperbolic certifies the complete structure") {
  auto r = run_cli("cert-hyperbolic");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(contains(r.output, "(w,x,y,z) = (3,3,3,3)"));
  REQUIRE(contains(r.output, "[pass] unique involution-fixed point on component X"));
  REQUIRE(contains(r.output, "[pass] standard cusp at end v1"));
  REQUIRE(contains(r.output, "[pass] standard cusp at end v4"));
  REQUIRE(contains(r.output, "[pass] invariant form of signature (3,1)"));
  REQUIRE(contains(r.output, "[pass] edge cycle degree (degree = 1)"));
  REQUIRE(contains(r.output, "overall: PASS"));

  auto j = nlohmann::json::parse(run_cli("--json cert-hyperbolic").output);
  REQUIRE(j["overall"] == "pass");
  REQUIRE(j["checks"].size() == 5);
}

TEST_CASE("tolerance flag reaches the float backend") {
  // a sloppy tolerance accepts a slightly perturbed relation ...
  auto loose = run_cli("--tolerance 0.05 verify --affine 3.0,3.0,1.0,1.01");
  INFO(loose.output);
  REQUIRE(contains(loose.output, "[pass] parameter relation"));
  // ... that the default tolerance rejects
  auto strict = run_cli("verify --affine 3.0,3.0,1.0,1.01");
  REQUIRE(strict.exit_code == 1);
  REQUIRE(contains(strict.output, "[fail] parameter relation"));
}
