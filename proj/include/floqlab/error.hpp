#pragma once

#include <stdexcept>
#include <string>

namespace floqlab {

// Error taxonomy; the CLI maps these onto exit codes (config 2, numerical 3,
// capability 4).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

// |h| = 0 where an eigenbasis is required (gap closed).
struct DegenerateField : Error {
    using Error::Error;
};

// Measured expectation vector has no direction (|r| = 0).
struct DegenerateEstimate : Error {
    using Error::Error;
};

struct FitFailure : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct CapabilityError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

}  // namespace floqlab
