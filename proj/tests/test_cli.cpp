#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = selbal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const char* base = std::getenv("SELBAL_TMP");
  const std::filesystem::path dir = base ? base : std::filesystem::temp_directory_path().string();
  return (dir / ("cli_" + name)).string();
}

json read(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST_CASE("generate writes instances and reports m, n, ratio") {
  const auto path = tmp("l4.json");
  const auto r = run({"generate", "-d", "2", "-p", "2", "-k", "1", "-L", "4", "-o", path});
  REQUIRE(r.code == 0);
  const auto summary = json::parse(r.out);
  CHECK(summary["result"]["m"] == 8);
  CHECK(summary["result"]["n"] == 16);
  CHECK(summary["result"]["ratio"].get<double>() == doctest::Approx(8.0 / (16.0 * 4.0)));
  CHECK(summary["version"] == "0.1.0");
  const auto inst = read(path);
  CHECK(inst["format"] == "selbal-instance-v1");
  CHECK(inst["m"] == 8);

  const auto fig = tmp("fig.json");
  REQUIRE(run({"generate", "--example-figure2", "-o", fig}).code == 0);
  CHECK(read(fig)["m"] == 34);
  CHECK(read(fig)["n"] == 25);

  const auto plan = run({"generate", "--plan", "--lambda", "1.5", "-d", "3", "-o", tmp("plan.json")});
  REQUIRE(plan.code == 0);
  CHECK(json::parse(plan.out)["result"]["ratio"].get<double>() > 0.0);
}

TEST_CASE("generate surfaces parameter errors") {
  const auto r = run({"generate", "-d", "2", "-k", "1", "-L", "2", "-o", tmp("bad.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("must exceed 2r") != std::string::npos);
  const auto s = run({"generate", "--plan", "--lambda", "1.5", "-d", "2"});
  CHECK(s.code == 1);
  CHECK(s.err.find("d too small") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve"}).code == 1);
}

TEST_CASE("solve: verdicts, engines and exit codes") {
  const auto path = tmp("l4s.json");
  REQUIRE(run({"generate", "-d", "2", "-k", "1", "-L", "4", "-o", path}).code == 0);
  for (const std::string engine : {"exhaustive", "bb", "mitm", "structural"}) {
    const auto r = run({"solve", path, "--engine", engine});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["result"]["verdict"] == "NotBalancing");
    CHECK(j["config"]["engine"] == engine);
    if (engine != "structural") CHECK(j["result"]["min_norm_sq_scaled"] == 4);
    CHECK(j["result"]["scale_sq"] == 4);
  }
  const auto capped = run({"solve", path, "--budget", "10"});
  CHECK(capped.code == 2);
  CHECK(json::parse(capped.out)["result"]["verdict"] == "Inconclusive");
  const auto table = run({"solve", path, "--format", "table"});
  CHECK(table.out.find("result.verdict") != std::string::npos);
}

TEST_CASE("solve on a duplicated vector prints the witness") {
  const auto path = tmp("dup.json");
  std::ofstream(path) << R"({"format":"selbal-instance-v1","n":2,"m":2,"p":2,"k":0,"vectors":[[[0,1]],[[0,1]]]})";
  const auto r = run({"solve", path});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"]["verdict"] == "Balancing");
  CHECK(j["result"]["witness"] == json::array({1, -1}));
}

TEST_CASE("sampling reports are byte-identical for a fixed seed") {
  const auto path = tmp("fig2.json");
  REQUIRE(run({"generate", "--example-figure2", "-o", path}).code == 0);
  const auto a = run({"solve", path, "--engine", "sample", "--budget", "2000", "--seed", "9"});
  const auto b = run({"solve", path, "--engine", "sample", "--budget", "2000", "--seed", "9"});
  CHECK(a.code == 2);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["config"]["seed"] == 9);
}

TEST_CASE("malformed instances name the field") {
  const auto path = tmp("broken.json");
  std::ofstream(path) << R"({"format":"selbal-instance-v1","n":2,"m":1,"p":2,"k":0,"vectors":[[[0,"one"]]]})";
  const auto r = run({"solve", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("vectors[0][0][1]") != std::string::npos);
}

TEST_CASE("verify passes generated instances and names corruptions") {
  const auto path = tmp("l5.json");
  REQUIRE(run({"generate", "-d", "2", "-k", "1", "-L", "5", "-o", path}).code == 0);
  const auto ok = run({"verify", path, "--samples", "1000", "--seed", "3"});
  REQUIRE(ok.code == 0);
  const auto j = json::parse(ok.out);
  CHECK(j["result"]["structural"]["passed"] == true);
  CHECK(j["result"]["verdict"]["verdict"] == "NotBalancing");
  CHECK(j["result"]["sample"]["verdict"] == "Inconclusive");

  auto inst = read(path);
  inst["vectors"][0][0][1] = -2;
  const auto bad = tmp("l5_bad.json");
  std::ofstream(bad) << inst.dump();
  const auto r = run({"verify", bad});
  CHECK(r.code == 2);
  CHECK(r.out.find("vector formula mismatch") != std::string::npos);

  const auto fig = tmp("fig3.json");
  REQUIRE(run({"generate", "--example-figure2", "-o", fig}).code == 0);
  CHECK(run({"verify", fig}).code == 0);
}

TEST_CASE("bounds rows") {
  const auto r = run({"bounds", "-n", "25"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["result"][0]["lower_m"].get<int>() >= 34);
  CHECK(j["result"][0]["upper_m"] == 174);
  CHECK(j["result"][0]["upper_minimal_certified"] == true);
  const auto t = run({"bounds", "--from", "2", "--to", "40", "--step", "2", "--format", "table"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("upper_ratio") != std::string::npos);
  std::istringstream lines(t.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 21);
}

TEST_CASE("explain and strictness subcommands") {
  const auto path = tmp("l4e.json");
  REQUIRE(run({"generate", "-d", "2", "-k", "1", "-L", "4", "-o", path}).code == 0);
  const auto e = run({"explain", path, "--eps", "0,0,0,0,1,0,0,-1"});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["result"]["j"] == 1);
  CHECK(run({"explain", path, "--eps", "0,0,0,0,0,0,0,0"}).code == 1);
  const auto s = run({"strictness", path});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["result"]["complete"] == true);
}
