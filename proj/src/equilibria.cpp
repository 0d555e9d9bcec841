#include "chemo/equilibria.hpp"

namespace chemo {

SteadyState trivial_state(const ModelParams& p) {
    return SteadyState{0.0, p.f, SteadyKind::trivial, true};
}

SteadyState coexistence_state(const ModelParams& p) {
    SteadyState s;
    s.kind = SteadyKind::coexistence;
    s.u_val = (p.r - p.f) / (p.r + p.a);
    s.v_val = p.r * (p.f + p.a) / (p.r + p.a);
    s.admissible = p.r >= p.f;
    return s;
}

std::vector<SteadyState> homogeneous_steady_states(const ModelParams& p) {
    p.validate();
    return {trivial_state(p), coexistence_state(p)};
}

RegimeReport classify_local_stability(const ModelParams& p) {
    p.validate();
    RegimeReport rep;
    if (p.r < p.f) {
        rep.regime = Regime::extinction;
        rep.trivial_state = StabilityLabel::stable;
        rep.coexistence_state = StabilityLabel::not_classified;  // not biologically meaningful
    } else if (p.r > p.f) {
        rep.regime = Regime::coexistence;
        rep.trivial_state = StabilityLabel::unstable;
        rep.coexistence_state = StabilityLabel::stable;
    } else {
        // r = f sits outside the paper's dichotomy; reported explicitly.
        rep.regime = Regime::degenerate;
        rep.trivial_state = StabilityLabel::not_classified;
        rep.coexistence_state = StabilityLabel::not_classified;
    }
    return rep;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::extinction: return "extinction";
        case Regime::coexistence: return "coexistence";
        case Regime::degenerate: return "degenerate";
    }
    return "?";
}

const char* to_string(StabilityLabel s) {
    switch (s) {
        case StabilityLabel::stable: return "stable";
        case StabilityLabel::unstable: return "unstable";
        case StabilityLabel::not_classified: return "not-classified";
    }
    return "?";
}

}  // namespace chemo
