#pragma once

#include <stdexcept>
#include <string>

namespace chemo {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidFieldError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// u dropped below -1e-12 somewhere; carries the time and the offending minimum.
struct NegativityError : Error {
    NegativityError(double t_, double min_u_)
        : Error("negative u (min " + std::to_string(min_u_) + ") at t=" + std::to_string(t_) +
                "; reduce dt"),
          t(t_), min_u(min_u_) {}
    double t;
    double min_u;
};

struct BlowUpError : Error {
    explicit BlowUpError(double t_)
        : Error("non-finite state at t=" + std::to_string(t_)), t(t_) {}
    double t;
};

// Operation called outside its r-vs-f regime.
struct RegimeError : Error {
    using Error::Error;
};

// Lemma hypotheses violated (e.g. case 1 needs f > r >= a).
struct HypothesisError : Error {
    using Error::Error;
};

struct InfeasibleError : Error {
    using Error::Error;
};

struct DegenerateCubicError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

// E2 undefined (u at or below the log floor); recoverable, the monitor records a gap.
struct UndefinedFunctionalError : Error {
    using Error::Error;
};

}  // namespace chemo
