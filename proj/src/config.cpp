#include "znsim/config.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "znsim/errors.hpp"

namespace znsim {

using nlohmann::json;

void RunConfig::validate() const {
  if (lx < 2 || ly < 2 || lx % 2 != 0 || ly % 2 != 0) {
    throw ConfigError("ConfigError: lattice dimensions must be even and >= 2");
  }
  if (groupOrder < 2) throw ConfigError("ConfigError: N must be >= 2");
  if (couplings.groupOrder != groupOrder) {
    throw ConfigError("ConfigError: coupling group order mismatch");
  }
  if (layer == Layer::Atomic && groupOrder != 2) {
    throw ConfigError("ConfigError: the atomic layer is Z_2 only");
  }
  if (mode == RunMode::Evolve && (totalTime < 0.0 || steps < 1)) {
    throw ConfigError("ConfigError: evolve needs t >= 0 and steps >= 1");
  }
  if (mode == RunMode::Scaling && scanSteps.size() < 2) {
    throw ConfigError("ConfigError: scaling needs at least 2 step counts");
  }
  // layout dimension guard before any allocation
  const int sites = lx * ly;
  const double logDim = sites * 1.0 + (2 * sites + 1) * std::log2(double(groupOrder));
  if (logDim > 27.0) throw TooLargeError("TooLarge: register dimension exceeds 2^27");
}

RunConfig parse_config_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("ConfigError: bad JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (in.contains("lattice")) {
      cfg.lx = in["lattice"].value("Lx", cfg.lx);
      cfg.ly = in["lattice"].value("Ly", cfg.ly);
    }
    cfg.groupOrder = in.value("N", cfg.groupOrder);
    if (in.contains("couplings")) {
      const json& c = in["couplings"];
      cfg.couplings.lambdaE = c.value("lambdaE", cfg.couplings.lambdaE);
      cfg.couplings.lambdaB = c.value("lambdaB", cfg.couplings.lambdaB);
      cfg.couplings.lambdaGM = c.value("lambdaGM", cfg.couplings.lambdaGM);
      cfg.couplings.mass = c.value("mass", cfg.couplings.mass);
    }
    cfg.couplings.groupOrder = cfg.groupOrder;
    if (in.contains("time")) {
      cfg.totalTime = in["time"].value("t", cfg.totalTime);
      cfg.steps = in["time"].value("M", cfg.steps);
    }
    if (in.contains("scanSteps")) cfg.scanSteps = in["scanSteps"].get<std::vector<int>>();
    if (in.contains("mode")) cfg.mode = mode_from_string(in["mode"].get<std::string>());
    if (in.contains("layer")) cfg.layer = layer_from_string(in["layer"].get<std::string>());
    cfg.phaseCompensation = in.value("phaseCompensation", cfg.phaseCompensation);
    if (in.contains("observables")) {
      cfg.observables = in["observables"].get<std::vector<std::string>>();
    }
    cfg.seed = in.value("seed", cfg.seed);
    cfg.outputDir = in.value("output", cfg.outputDir);
    cfg.injectAngleError = in.value("injectAngleError", cfg.injectAngleError);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("ConfigError: ") + e.what());
  }
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json out;
  out["lattice"] = {{"Lx", cfg.lx}, {"Ly", cfg.ly}};
  out["N"] = cfg.groupOrder;
  out["couplings"] = {{"lambdaE", cfg.couplings.lambdaE},
                      {"lambdaB", cfg.couplings.lambdaB},
                      {"lambdaGM", cfg.couplings.lambdaGM},
                      {"mass", cfg.couplings.mass}};
  out["time"] = {{"t", cfg.totalTime}, {"M", cfg.steps}};
  out["scanSteps"] = cfg.scanSteps;
  switch (cfg.mode) {
    case RunMode::Verify: out["mode"] = "verify"; break;
    case RunMode::Evolve: out["mode"] = "evolve"; break;
    case RunMode::Scaling: out["mode"] = "scaling"; break;
    case RunMode::Info: out["mode"] = "info"; break;
  }
  out["layer"] = cfg.layer == Layer::Abstract ? "abstract" : "atomic";
  out["phaseCompensation"] = cfg.phaseCompensation;
  out["observables"] = cfg.observables;
  out["seed"] = cfg.seed;
  out["output"] = cfg.outputDir;
  out["injectAngleError"] = cfg.injectAngleError;
  return out.dump(2);
}

RunMode mode_from_string(const std::string& name) {
  if (name == "verify") return RunMode::Verify;
  if (name == "evolve") return RunMode::Evolve;
  if (name == "scaling") return RunMode::Scaling;
  if (name == "info") return RunMode::Info;
  throw ConfigError("ConfigError: unknown mode " + name);
}

Layer layer_from_string(const std::string& name) {
  if (name == "abstract") return Layer::Abstract;
  if (name == "atomic") return Layer::Atomic;
  throw ConfigError("ConfigError: unknown layer " + name);
}

}  // namespace znsim
