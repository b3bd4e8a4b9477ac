#pragma once

#include <stdexcept>
#include <string>

namespace dboot {

/// A dataset with no columns, or with an empty column.
struct EmptyDataset : std::invalid_argument {
    explicit EmptyDataset(const std::string& what) : std::invalid_argument(what) {}
};

/// Column lengths disagree under row resampling, or the dimension is out of range.
struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Fewer observations than the requested operation can work with.
struct TooFewObservations : std::invalid_argument {
    explicit TooFewObservations(const std::string& what) : std::invalid_argument(what) {}
};

/// A functional evaluated to NaN or infinity.
struct NonFiniteValue : std::runtime_error {
    explicit NonFiniteValue(const std::string& what) : std::runtime_error(what) {}
};

/// Confidence level outside (0, 1).
struct InvalidLevel : std::invalid_argument {
    explicit InvalidLevel(const std::string& what) : std::invalid_argument(what) {}
};

/// A partial derivative of the requested order is not available.
struct DerivativeUnavailable : std::logic_error {
    explicit DerivativeUnavailable(const std::string& what) : std::logic_error(what) {}
};

/// Malformed configuration file or inconsistent option set.
struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Output file could not be opened or written.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// More than the tolerated share of simulation trials failed.
struct ExcessTrialFailures : std::runtime_error {
    explicit ExcessTrialFailures(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dboot
