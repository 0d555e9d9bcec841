#pragma once

#include "chemo/errors.hpp"

namespace chemo {

/// Physical constants of the system plus the constant supply level.
struct ModelParams {
    double D = 1.0;    // population diffusion coefficient, > 0
    double chi = 1.0;  // chemotactic sensitivity, >= 0
    double r = 1.0;    // logistic growth rate, > 0
    double a = 0.0;    // chemical self-production rate, >= 0
    double f = 0.0;    // constant external supply, >= 0

    void validate() const {
        if (!(D > 0.0)) throw ConfigError("ModelParams: D must be > 0");
        if (!(r > 0.0)) throw ConfigError("ModelParams: r must be > 0");
        if (!(chi >= 0.0)) throw ConfigError("ModelParams: chi must be >= 0");
        if (!(a >= 0.0)) throw ConfigError("ModelParams: a must be >= 0");
        if (!(f >= 0.0)) throw ConfigError("ModelParams: f must be >= 0");
    }
};

}  // namespace chemo
