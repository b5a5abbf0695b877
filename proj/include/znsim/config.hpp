#pragma once

#include <string>
#include <vector>

#include "znsim/hamiltonian.hpp"

namespace znsim {

enum class RunMode { Verify, Evolve, Scaling, Info };
enum class Layer { Abstract, Atomic };

struct RunConfig {
  int lx = 2;
  int ly = 2;
  int groupOrder = 2;
  CouplingSet couplings;
  double totalTime = 1.0;
  int steps = 10;
  std::vector<int> scanSteps = {10, 20, 40, 80, 160, 320};
  RunMode mode = RunMode::Verify;
  Layer layer = Layer::Abstract;
  bool phaseCompensation = true;
  std::vector<std::string> observables = {"electricEnergy", "plaquetteAvg", "density",
                                          "totalEnergy", "gaussResidual"};
  std::uint64_t seed = 1;
  std::string outputDir = ".";
  double injectAngleError = 0.0;  // verify negative control

  void validate() const;  // throws ConfigError / TooLargeError
};

RunConfig parse_config_json(const std::string& text);
std::string config_to_json(const RunConfig& cfg);

RunMode mode_from_string(const std::string& name);
Layer layer_from_string(const std::string& name);

}  // namespace znsim
