#include "ptqes/hamiltonics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ptqes::hamiltonics {

double potential_x(const ModelParams& p, double x) {
    return p.a * x * x * x - p.b * x;
}

double hamiltonian_value(const ModelParams& p, const PhaseState& s) {
    return (1.0 + p.g * s.x) * s.y * s.y / 2.0 + potential_x(p, s.x);
}

PhaseState canonical_map(const ModelParams& p, const OscillatorState& o) {
    if (p.g == 0.0) throw SingularMap("canonical_map: g = 0");
    if (o.Q == 0.0) throw SingularMap("canonical_map: Q = 0");
    return {(2.0 * o.Q * o.Q - 1.0) / p.g, (p.g / 4.0) * o.P / o.Q};
}

double verify_canonical(const ModelParams& p, int samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> q_mag(0.1, 2.0);
    std::uniform_real_distribution<double> p_val(-2.0, 2.0);
    std::uniform_int_distribution<int> sign(0, 1);

    const double h = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double Q = (sign(rng) ? 1.0 : -1.0) * q_mag(rng);
        const double P = p_val(rng);
        const auto x_of = [&](double q, double pp) {
            return canonical_map(p, {q, pp}).x;
        };
        const auto p_of = [&](double q, double pp) {
            return canonical_map(p, {q, pp}).y;
        };
        const double dx_dQ = (x_of(Q + h, P) - x_of(Q - h, P)) / (2.0 * h);
        const double dx_dP = (x_of(Q, P + h) - x_of(Q, P - h)) / (2.0 * h);
        const double dp_dQ = (p_of(Q + h, P) - p_of(Q - h, P)) / (2.0 * h);
        const double dp_dP = (p_of(Q, P + h) - p_of(Q, P - h)) / (2.0 * h);
        const double det = dx_dQ * dp_dP - dx_dP * dp_dQ;
        worst = std::max(worst, std::abs(det - 1.0));
    }
    return worst;
}

double potential_Q(const ModelParams& p, double Q) {
    const double g3 = p.g * p.g * p.g;
    const double q2 = Q * Q;
    return ((8.0 * p.a * q2 / g3 - 12.0 * p.a / g3) * q2 +
            (6.0 * p.a / g3 - 2.0 * p.b / p.g)) * q2 +
           (p.b / p.g - p.a / g3);
}

GaugeParams gauge_params(const ModelParams& p) {
    if (!(p.g > 0.0) || !(p.a > 0.0)) {
        throw BadParams("gauge_params: requires g > 0 and a > 0");
    }
    const double g5 = p.g * p.g * p.g * p.g * p.g;
    return {-std::sqrt(18.0 * p.a / g5), std::sqrt(8.0 * p.a / g5)};
}

ReducedEquation reduced_equation(const ModelParams& p, double E) {
    const GaugeParams gp = gauge_params(p);
    const double g2 = p.g * p.g;
    const double g3 = g2 * p.g;
    const double g5 = g3 * g2;
    const double c0 = 16.0 * E / g2 + 16.0 * p.a / g5 - 16.0 * p.b / g3;
    const double c2 = 4.0 * gp.alpha * gp.alpha - 8.0 * gp.beta -
                      (32.0 / g2) * (3.0 * p.a / g3 - p.b / p.g);
    return {c0, c2, gp.alpha, gp.beta};
}

double schrodinger_residual(const ModelParams& p, double E, const PsiFunction& psi,
                            const std::vector<double>& q_samples) {
    double worst = 0.0;
    for (double Q : q_samples) {
        const PsiEval v = psi(Q);
        const double lhs = v.d2psi - v.dpsi / Q +
                           (16.0 / (p.g * p.g)) * (E - potential_Q(p, Q)) * v.psi;
        const double denom = std::max({std::abs(v.psi), std::abs(v.dpsi),
                                       std::abs(v.d2psi)});
        if (denom == 0.0) continue;
        worst = std::max(worst, std::abs(lhs) / denom);
    }
    return worst;
}

}  // namespace ptqes::hamiltonics
