#pragma once

#include <stdexcept>
#include <string>

namespace sympro {

// Base class for all library errors. Subclasses carry the failure taxonomy
// used throughout the experiment code; messages name the offending quantity.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalBlowup : Error {
    using Error::Error;
};
struct StepBudgetExceeded : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct ConvergenceFailure : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct DegenerateTangent : Error {
    using Error::Error;
};
struct EmptyNeutralSubspace : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct NoCircleFactor : Error {
    using Error::Error;
};
struct NoPinnedPoint : Error {
    using Error::Error;
};
struct AmbiguousMode : Error {
    using Error::Error;
};
struct ZeroGap : Error {
    using Error::Error;
};
struct ParameterRejected : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

} // namespace sympro
