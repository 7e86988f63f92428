#pragma once

#include <functional>
#include <vector>

#include "ptqes/errors.hpp"
#include "ptqes/model.hpp"

namespace ptqes::hamiltonics {

// Transformed coordinates: x = (2Q^2 - 1)/g, p = (g/4) P/Q.
struct OscillatorState {
    double Q = 0.0;
    double P = 0.0;
};

// Coefficients of the gauge factor exp(-alpha Q^2 - beta Q^4). The signs
// are fixed by the cancellation of the Q^4 and Q^6 terms in the reduced
// equation: alpha beta = -12a/g^5 and beta^2 = 8a/g^5 exactly.
struct GaugeParams {
    double alpha;
    double beta;
};

// eta'' + (-1/Q - 4 alpha Q - 8 beta Q^3) eta' + (c0 + c2 Q^2) eta = 0
struct ReducedEquation {
    double c0;   // 16E/g^2 + 16a/g^5 - 16b/g^3
    double c2;   // 4 alpha^2 - 8 beta - (32/g^2)(3a/g^3 - b/g)
    double alpha;
    double beta;
};

// Value and first two derivatives of a candidate wavefunction at Q.
struct PsiEval {
    double psi;
    double dpsi;
    double d2psi;
};
using PsiFunction = std::function<PsiEval(double)>;

// V(x) = a x^3 - b x
double potential_x(const ModelParams& p, double x);

// H = (1 + g x) y^2 / 2 + V(x); generates the classical flow.
double hamiltonian_value(const ModelParams& p, const PhaseState& s);

// Throws SingularMap when g = 0 or Q = 0.
PhaseState canonical_map(const ModelParams& p, const OscillatorState& o);

// Max |det d(x,p)/d(Q,P) - 1| over random samples with |Q| in [0.1, 2],
// P in [-2, 2], central differences with h = 1e-6. The analytic value is 1
// everywhere the map is defined.
double verify_canonical(const ModelParams& p, int samples, unsigned long seed);

// Transformed potential 8aQ^6/g^3 - 12aQ^4/g^3 + (6a/g^3 - 2b/g)Q^2
// + (b/g - a/g^3); equals potential_x((2Q^2-1)/g) identically.
double potential_Q(const ModelParams& p, double Q);

// alpha = -sqrt(18a/g^5), beta = +sqrt(8a/g^5). Throws BadParams unless
// g > 0 and a > 0.
GaugeParams gauge_params(const ModelParams& p);

ReducedEquation reduced_equation(const ModelParams& p, double E);

// Max over samples of |psi'' - psi'/Q + (16/g^2)(E - V(Q)) psi| normalized
// per sample by max(|psi|, |psi'|, |psi''|); samples must avoid Q = 0.
double schrodinger_residual(const ModelParams& p, double E, const PsiFunction& psi,
                            const std::vector<double>& q_samples);

}  // namespace ptqes::hamiltonics
