#pragma once

#include <cmath>

namespace ptqes {

// Parameters of the one-parameter family: cubic potential V(x) = a x^3 - b x
// and family parameter g. Defaults are the canonical setting a = 2/3, b = 1.
// g = 0 is meaningful for the classical flow only; the transformed picture
// requires g > 0.
struct ModelParams {
    double a = 2.0 / 3.0;
    double b = 1.0;
    double g = 0.0;
};

struct PhaseState {
    double x = 0.0;
    double y = 0.0;
};

inline PhaseState operator+(const PhaseState& l, const PhaseState& r) {
    return {l.x + r.x, l.y + r.y};
}

inline PhaseState operator*(double c, const PhaseState& s) {
    return {c * s.x, c * s.y};
}

inline bool all_finite(const PhaseState& s) {
    return std::isfinite(s.x) && std::isfinite(s.y);
}

}  // namespace ptqes
