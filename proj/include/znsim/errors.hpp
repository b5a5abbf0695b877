#pragma once

#include <stdexcept>
#include <string>

namespace znsim {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OddDimensionError : SimError { using SimError::SimError; };
struct TooSmallError : SimError { using SimError::SimError; };
struct BadOrderError : SimError { using SimError::SimError; };
struct OutOfRangeError : SimError { using SimError::SimError; };
struct DimMismatchError : SimError { using SimError::SimError; };
struct DuplicateTargetError : SimError { using SimError::SimError; };
struct SameModeError : SimError { using SimError::SimError; };
struct NoAncillaError : SimError { using SimError::SimError; };
struct LayoutMismatchError : SimError { using SimError::SimError; };
struct TooLargeError : SimError { using SimError::SimError; };
struct AncillaNotReadyError : SimError { using SimError::SimError; };
struct WrongGroupOrderError : SimError { using SimError::SimError; };
struct InconsistentPlanError : SimError { using SimError::SimError; };
struct ConfigError : SimError { using SimError::SimError; };

}  // namespace znsim
