#pragma once

#include <stdexcept>
#include <string>

namespace splinepower {

/// Matched segment count came out below 1 (degree exceeded the budget of the
/// dimension-matching formula).
struct MInvalidError : std::domain_error {
    explicit MInvalidError(const std::string& what) : std::domain_error(what) {}
};

/// A ratio denominator is non-positive (the m < 1 regime).
struct DenominatorNonpositiveError : std::domain_error {
    explicit DenominatorNonpositiveError(const std::string& what) : std::domain_error(what) {}
};

/// Level-set parameter gamma must exceed 1.
struct GammaOutOfRangeError : std::domain_error {
    explicit GammaOutOfRangeError(const std::string& what) : std::domain_error(what) {}
};

/// Endpoint-derivative data does not match the parity rule for the degree.
struct ParityMismatchError : std::invalid_argument {
    explicit ParityMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// Polynomial degree cap exceeded.
struct DegreeCapError : std::length_error {
    explicit DegreeCapError(const std::string& what) : std::length_error(what) {}
};

/// Estimation request needs the extended-precision flag.
struct ExtendedPrecisionRequiredError : std::domain_error {
    explicit ExtendedPrecisionRequiredError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace splinepower
