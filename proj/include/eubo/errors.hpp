#pragma once

#include <stdexcept>
#include <string>

namespace eubo {

// Base class for everything thrown on purpose by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad run configuration: unknown keys, invalid hyperparameters, dimension
// mismatches between user-supplied objects.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Bad runtime input to an operation (empty batch, label outside {0,1}, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// A model was asked for a gradient it does not provide.
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Every importance weight underflowed to zero: the proposal is
// catastrophically mismatched to the target. Raised instead of silently
// returning uniform weights, which would corrupt optimization invisibly.
class DegenerateWeightsError : public Error {
public:
    using Error::Error;
};

// Non-finite gradient or state inside an optimizer step.
class OptimizerError : public Error {
public:
    using Error::Error;
};

// Quadrature failure: non-finite integrand or unnormalized density.
class OracleError : public Error {
public:
    using Error::Error;
};

// An integral that is genuinely infinite (e.g. chi^n divergence with a
// too-light proposal tail). Distinct from OracleError so callers can treat
// "outside the domain" differently from "numerical breakage".
class DivergenceError : public Error {
public:
    using Error::Error;
};

// CSV / schema ingestion problems; message names the offending row/column.
class IngestError : public Error {
public:
    using Error::Error;
};

} // namespace eubo
