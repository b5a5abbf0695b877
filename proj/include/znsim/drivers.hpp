#pragma once

#include <string>
#include <vector>

#include "znsim/config.hpp"

namespace znsim {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool allPass() const;
};

VerifyReport run_verify_checks(const RunConfig& cfg);

// Exit codes: 0 pass, 1 check failure, 2 config error, 3 resource guard.
int run_verify(const RunConfig& cfg);
int run_evolve(const RunConfig& cfg);
int run_scaling(const RunConfig& cfg);
int run_info(const RunConfig& cfg);

int run(const RunConfig& cfg);

}  // namespace znsim
