#include <cstdio>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int rc = 0;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int rc = dseries::cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("selftest succeeds") {
  const Run r = run({"selftest", "--output", "-", "--format", "csv"});
  CHECK(r.rc == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).rc == 1);
  CHECK(run({"nonsense"}).rc == 1);
  CHECK(run({"eval", "--k", "banana"}).rc == 1);
  CHECK(run({"eval", "--format", "xml"}).rc == 1);
  CHECK(run({"eval", "--N", "0", "--output", "-"}).rc == 1);
  CHECK(run({"eval", "--N", "1.5", "--output", "-"}).rc == 1);
  CHECK(run({"eval", "--k", "1", "--coefficient", "mu_log", "--N", "100", "--output", "-"}).rc == 1);
  CHECK(run({"zeros", "--J-values", "0,x", "--N", "100", "--output", "-"}).rc == 1);
  CHECK(run({"--help"}).rc == 0);
}

TEST_CASE("numeric failures exit with 2") {
  // Every x in [1e-3, 1e-1] gives a residual far below the tail bound at N = 10.
  const Run r = run({"residual", "--k", "3", "--N", "10", "--points", "12", "--output", "-"});
  CHECK(r.rc == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("eval csv and json") {
  const Run r = run({"eval", "--k", "2", "--N", "1e4", "--points", "3", "--x-min", "0.1", "--x-max", "0.4", "--linear",
                     "--output", "-", "--format", "both"});
  REQUIRE(r.rc == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,value,imag,N,tail_bound,rounding_bound");
  std::getline(in, line);
  CHECK(line.rfind("0.10000000000000001,", 0) == 0);
  const auto brace = r.out.find('{');
  REQUIRE(brace != std::string::npos);
  const auto doc = nlohmann::json::parse(r.out.substr(brace));
  CHECK(doc["config"]["k"] == 2);
  CHECK(doc["config"]["N"] == 10000);
  CHECK(doc["config"]["linear"] == true);
  CHECK(doc["results"]["values"].size() == 3);
  CHECK(doc["version"].is_string());
}

TEST_CASE("config file supplies values and flags win") {
  const auto cfg = temp_file("dseries_cli_test.ini", "# test config\nk = 2\npoints = 4\nN = 1e3\n");
  Run r = run({"eval", "--config", cfg.string(), "--output", "-", "--format", "json"});
  REQUIRE(r.rc == 0);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["k"] == 2);
  CHECK(doc["config"]["points"] == 4);
  CHECK(doc["config"]["N"] == 1000);

  r = run({"eval", "--config", cfg.string(), "--points", "2", "--output", "-", "--format", "json"});
  REQUIRE(r.rc == 0);
  doc = nlohmann::json::parse(r.out);
  CHECK(doc["config"]["points"] == 2);

  const auto bad = temp_file("dseries_cli_bad.ini", "k = 2\nbogus = 1\n");
  CHECK(run({"eval", "--config", bad.string(), "--output", "-"}).rc == 1);
  std::filesystem::remove(cfg);
  std::filesystem::remove(bad);
}

TEST_CASE("files are written under the output prefix") {
  const auto prefix = (std::filesystem::temp_directory_path() / "dseries_cli_out").string();
  const Run r = run({"upsilon", "--k", "2", "--kernel", "zeta", "--output", prefix});
  REQUIRE(r.rc == 0);
  CHECK(std::filesystem::exists(prefix + ".csv"));
  CHECK(std::filesystem::exists(prefix + ".json"));
  std::ifstream f(prefix + ".json");
  const auto doc = nlohmann::json::parse(f);
  CHECK(doc["results"]["residue"]["kernel"] == "zeta");
  std::filesystem::remove(prefix + ".csv");
  std::filesystem::remove(prefix + ".json");
}
