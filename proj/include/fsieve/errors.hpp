#pragma once

#include <stdexcept>
#include <string>

namespace fsieve {

// Caller violated a documented precondition (bad prime, wrong degree, mixed fields...).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The geometry does not allow the request (singular point, non-smooth model).
struct GeometryError : std::domain_error {
    using std::domain_error::domain_error;
};

// A coordinate or divisor does not reduce modulo the requested prime.
struct ReductionError : std::domain_error {
    using std::domain_error::domain_error;
};

// Descriptor data failed to parse or validate.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request falls outside what this library implements (wild ramification, rank > 0...).
struct Unsupported : std::logic_error {
    using std::logic_error::logic_error;
};

// A truncated power series ran out of precision before the answer was determined.
// Callers retry with a larger precision.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fsieve
