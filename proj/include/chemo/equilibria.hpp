#pragma once

#include <string>
#include <vector>

#include "chemo/params.hpp"

namespace chemo {

enum class SteadyKind { trivial, coexistence };

/// A spatially homogeneous steady state of the system.
struct SteadyState {
    double u_val = 0.0;
    double v_val = 0.0;
    SteadyKind kind = SteadyKind::trivial;
    bool admissible = true;  // both components >= 0
};

enum class Regime { extinction, coexistence, degenerate };

enum class StabilityLabel { stable, unstable, not_classified };

struct RegimeReport {
    Regime regime = Regime::degenerate;
    StabilityLabel trivial_state = StabilityLabel::not_classified;
    StabilityLabel coexistence_state = StabilityLabel::not_classified;
};

/// Always (0, f) first, then the coexistence state
/// (u*, v*) = ((r-f)/(r+a), r(f+a)/(r+a)), flagged admissible iff r >= f.
std::vector<SteadyState> homogeneous_steady_states(const ModelParams& p);

SteadyState trivial_state(const ModelParams& p);
SteadyState coexistence_state(const ModelParams& p);

/// Sign-of-(r-f) classification: r < f extinction regime with (0,f) stable;
/// r > f coexistence regime with (0,f) unstable and (u*,v*) stable; r = f
/// degenerate, nothing classified.
RegimeReport classify_local_stability(const ModelParams& p);

const char* to_string(Regime r);
const char* to_string(StabilityLabel s);

}  // namespace chemo
