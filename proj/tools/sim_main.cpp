#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "znsim/drivers.hpp"
#include "znsim/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw znsim::ConfigError("ConfigError: cannot open config file " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact state-vector simulator for a stroboscopic Z_N lattice gauge theory protocol"};
  app.require_subcommand(1);

  std::string configPath, outDir, latticeSpec, modeName, layerName;
  double t = -1.0;
  int steps = -1;
  std::int64_t seed = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", configPath, "JSON configuration file");
    sub->add_option("--out", outDir, "output directory");
    sub->add_option("--t", t, "total evolution time");
    sub->add_option("--steps", steps, "number of Trotter steps");
    sub->add_option("--lattice", latticeSpec, "lattice size, e.g. 2x4");
    sub->add_option("--layer", layerName, "abstract or atomic");
    sub->add_option("--seed", seed, "RNG seed");
  };

  CLI::App* verify = app.add_subcommand("verify", "run the identity check suite");
  CLI::App* evolve = app.add_subcommand("evolve", "Trotterized time evolution");
  CLI::App* scaling = app.add_subcommand("scaling", "Trotter error scan over step counts");
  CLI::App* info = app.add_subcommand("info", "print lattice and register facts");
  for (CLI::App* sub : {verify, evolve, scaling, info}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    znsim::RunConfig cfg;
    if (!configPath.empty()) cfg = znsim::parse_config_json(read_file(configPath));

    if (verify->parsed()) cfg.mode = znsim::RunMode::Verify;
    if (evolve->parsed()) cfg.mode = znsim::RunMode::Evolve;
    if (scaling->parsed()) cfg.mode = znsim::RunMode::Scaling;
    if (info->parsed()) cfg.mode = znsim::RunMode::Info;

    if (!outDir.empty()) cfg.outputDir = outDir;
    if (t >= 0.0) cfg.totalTime = t;
    if (steps >= 0) cfg.steps = steps;
    if (seed >= 0) cfg.seed = std::uint64_t(seed);
    if (!layerName.empty()) cfg.layer = znsim::layer_from_string(layerName);
    if (!latticeSpec.empty()) {
      const auto x = latticeSpec.find('x');
      if (x == std::string::npos) {
        throw znsim::ConfigError("ConfigError: lattice must look like LxxLy, e.g. 2x4");
      }
      cfg.lx = std::stoi(latticeSpec.substr(0, x));
      cfg.ly = std::stoi(latticeSpec.substr(x + 1));
    }
    cfg.validate();
    return znsim::run(cfg);
  } catch (const znsim::TooLargeError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const znsim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
