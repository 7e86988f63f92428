#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "ptqes/errors.hpp"

namespace ptqes::numerics {

// Real polynomial in ascending-degree coefficient order: coeffs[k] * x^k.
// Invariant after trim(): leading coefficient nonzero unless the polynomial
// is identically zero.
struct Poly {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const;
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> x) const;
    Poly monic() const;
    void trim();
};

// Symmetric tridiagonal matrix: diag has m entries, offdiag m-1.
struct TriDiag {
    std::vector<double> diag;
    std::vector<double> offdiag;
};

// Root of f in [lo, hi] with f(lo) f(hi) < 0: bisection until the bracket
// width is <= tol, then a guarded secant-slope Newton polish inside the
// final bracket. Deterministic. Throws NoSignChange without a bracket.
double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, double tol);

// All eigenvalues, ascending, by Sturm-count bisection on the shifted
// leading-minor pivot sequence. Robust for clustered and decoupled blocks.
std::vector<double> eig_symmetric_tridiagonal(const TriDiag& m);

// All complex roots with multiplicity via companion-matrix eigenvalues of
// the monic rescaling (with an internal variable scaling that keeps the
// matrix entries O(1)). Sorted by real part, then imaginary part.
// Throws DegenerateInput for the zero polynomial.
std::vector<std::complex<double>> poly_roots(const Poly& p);

// (f(x+h) - f(x-h)) / (2h)
double central_difference(const std::function<double(double)>& f, double x, double h);

namespace detail {
inline bool all_finite(double v) { return std::isfinite(v); }
}

// Classical fixed-step fourth-order Runge-Kutta update. State needs
// vector-space arithmetic (State + State, double * State) and an all_finite
// overload reachable by ADL. Throws NonFiniteState when the update leaves
// the finite domain.
template <class State, class F>
State rk4_step(F&& f, const State& s, double dt) {
    const State k1 = f(s);
    const State k2 = f(s + (dt / 2.0) * k1);
    const State k3 = f(s + (dt / 2.0) * k2);
    const State k4 = f(s + dt * k3);
    State next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    using detail::all_finite;
    if (!all_finite(next)) {
        throw NonFiniteState("rk4_step: state left the finite domain");
    }
    return next;
}

}  // namespace ptqes::numerics
