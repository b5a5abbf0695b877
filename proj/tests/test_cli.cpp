#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "znsim/drivers.hpp"
#include "znsim/errors.hpp"

using namespace znsim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_sim(const std::string& args) {
  const char* bin = std::getenv("SIM_BINARY");
  REQUIRE(bin != nullptr);
  int rc = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("config JSON round trip and defaults") {
  RunConfig cfg;
  cfg.lx = 2;
  cfg.ly = 4;
  cfg.couplings.lambdaB = 0.5;
  cfg.mode = RunMode::Scaling;
  cfg.seed = 99;
  RunConfig back = parse_config_json(config_to_json(cfg));
  CHECK(back.lx == 2);
  CHECK(back.ly == 4);
  CHECK(back.couplings.lambdaB == 0.5);
  CHECK(back.mode == RunMode::Scaling);
  CHECK(back.seed == 99);

  CHECK_THROWS_AS(parse_config_json("{not json"), ConfigError);
  CHECK_THROWS_AS(mode_from_string("bogus"), ConfigError);
}

TEST_CASE("config validation") {
  RunConfig cfg;
  cfg.lx = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.lx = 2;
  cfg.groupOrder = 3;
  cfg.couplings.groupOrder = 3;
  cfg.layer = Layer::Atomic;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // atomic is Z_2-only
  cfg.layer = Layer::Abstract;
  CHECK_NOTHROW(cfg.validate());

  RunConfig big;
  big.lx = 10;
  big.ly = 10;
  big.couplings.groupOrder = 2;
  CHECK_THROWS_AS(big.validate(), TooLargeError);

  RunConfig scan;
  scan.mode = RunMode::Scaling;
  scan.scanSteps = {10};
  CHECK_THROWS_AS(scan.validate(), ConfigError);
}

TEST_CASE("verify driver passes by default and fails under angle injection") {
  RunConfig cfg;
  cfg.outputDir = ".";
  VerifyReport rep = run_verify_checks(cfg);
  CHECK(rep.allPass());
  for (const CheckResult& c : rep.checks) {
    INFO(c.name);
    CHECK(c.residual < c.threshold);
  }

  RunConfig bad = cfg;
  bad.injectAngleError = 0.01;
  VerifyReport badRep = run_verify_checks(bad);
  CHECK_FALSE(badRep.allPass());
}

TEST_CASE("evolve driver emits a well-formed CSV") {
  RunConfig cfg;
  cfg.mode = RunMode::Evolve;
  cfg.totalTime = 0.3;
  cfg.steps = 3;
  cfg.outputDir = ".";
  CHECK(run_evolve(cfg) == 0);
  std::string csv = slurp("./results.csv");
  int rows = 0, meta = 0;
  std::istringstream lines(csv);
  std::string line, header;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      ++meta;
    } else if (header.empty()) {
      header = line;
    } else {
      ++rows;
      CHECK(line.find("nan") == std::string::npos);
      CHECK(line.find("inf") == std::string::npos);
    }
  }
  CHECK(meta >= 2);
  CHECK(rows == 4);  // initial row + 3 steps
  CHECK(header.find("gaussResidual") != std::string::npos);

  // t=0 edge: single row with the initial observables
  RunConfig zero = cfg;
  zero.totalTime = 0.0;
  CHECK(run_evolve(zero) == 0);
  std::string zcsv = slurp("./results.csv");
  int zrows = 0;
  std::istringstream zlines(zcsv);
  bool sawHeader = false;
  while (std::getline(zlines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!sawHeader) {
      sawHeader = true;
      continue;
    }
    ++zrows;
  }
  CHECK(zrows == 1);
}

TEST_CASE("evolve output is deterministic for a fixed config") {
  RunConfig cfg;
  cfg.mode = RunMode::Evolve;
  cfg.totalTime = 0.2;
  cfg.steps = 2;
  cfg.outputDir = ".";
  REQUIRE(run_evolve(cfg) == 0);
  std::string first = slurp("./results.csv");
  REQUIRE(run_evolve(cfg) == 0);
  CHECK(first == slurp("./results.csv"));
}

TEST_CASE("scaling driver reports a first-order slope") {
  RunConfig cfg;
  cfg.mode = RunMode::Scaling;
  cfg.scanSteps = {8, 16, 32};
  cfg.outputDir = ".";
  CHECK(run_scaling(cfg) == 0);
  std::string csv = slurp("./results.csv");
  CHECK(csv.find("# slope") != std::string::npos);
  CHECK(csv.find("M,error") != std::string::npos);
}

TEST_CASE("CLI binary exit codes") {
  CHECK(run_sim("info --lattice 2x2") == 0);
  CHECK(run_sim("evolve --lattice 3x2 --t 0.1 --steps 1") == 2);   // config error
  CHECK(run_sim("info --lattice 10x10") == 3);                    // resource guard
  CHECK(run_sim("evolve --t 0.1 --steps 1 --out .") == 0);
}
