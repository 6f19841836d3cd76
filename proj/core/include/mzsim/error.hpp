#pragma once

#include <stdexcept>
#include <string>

namespace mzsim {

// Base of everything thrown by the library on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed or physically impossible input (bad file, bad parameter, bad
// matrix).  The CLI maps these to exit code 3.
struct ValidationError : Error {
    using Error::Error;
};

// An algorithm ran but failed to produce a trustworthy answer.  Exit code 4.
struct NumericError : Error {
    using Error::Error;
};

struct NonSquareError : ValidationError {
    using ValidationError::ValidationError;
};

struct NonUnitaryError : ValidationError {
    NonUnitaryError(const std::string &msg, double deviation)
        : ValidationError(msg), deviation(deviation) {}
    double deviation;
};

struct DimensionMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

struct NegativeCountError : ValidationError {
    using ValidationError::ValidationError;
};

struct InvalidParameterError : ValidationError {
    using ValidationError::ValidationError;
};

struct ZeroRadiusError : ValidationError {
    using ValidationError::ValidationError;
};

struct PhotonOverflowError : ValidationError {
    using ValidationError::ValidationError;
};

struct MatrixTooLargeError : ValidationError {
    using ValidationError::ValidationError;
};

struct NonPositiveResistanceError : ValidationError {
    using ValidationError::ValidationError;
};

struct InsufficientSpanError : ValidationError {
    using ValidationError::ValidationError;
};

struct TooFewSamplesError : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateCurveError : ValidationError {
    using ValidationError::ValidationError;
};

struct RankDeficientError : ValidationError {
    using ValidationError::ValidationError;
};

struct AmbiguousBranchError : ValidationError {
    using ValidationError::ValidationError;
};

struct IncompleteDatasetError : ValidationError {
    using ValidationError::ValidationError;
};

struct CsvFormatError : ValidationError {
    using ValidationError::ValidationError;
};

struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

struct NonConvergenceError : NumericError {
    NonConvergenceError(const std::string &msg, int iterations, double residual)
        : NumericError(msg), iterations(iterations), residual(residual) {}
    int iterations;
    double residual;
};

}  // namespace mzsim
