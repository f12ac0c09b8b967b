#pragma once

#include <stdexcept>
#include <string>

namespace qd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// State or operator violates a positivity tolerance.
struct NotPositive : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

struct NegativeCoefficient : Error {
    using Error::Error;
};

// Closed-form solve hit a vanishing denominator (eta = 0, lambda = 0, ...).
struct SingularParameter : Error {
    using Error::Error;
};

// Requested point lies outside the nonnegative coefficient cone.
struct Infeasible : Error {
    using Error::Error;
};

struct InvalidState : Error {
    using Error::Error;
};

// Phase grid cannot resolve the trigonometric degree present in the data.
struct GridTooCoarse : Error {
    using Error::Error;
};

}  // namespace qd
