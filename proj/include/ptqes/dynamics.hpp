#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptqes/errors.hpp"
#include "ptqes/model.hpp"

namespace ptqes::dynamics {

enum class StabilityClass { Center, Saddle, Degenerate, NonReal };
const char* to_string(StabilityClass c);

struct Mat2 {
    double a11, a12, a21, a22;
    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

// A fixed point of the flow with its linearization. The Jacobian is
// traceless at every fixed point, so lambda2 = -lambda1 and lambda^2 is
// real. For the x = -1/g families the location can be complex (y pure
// imaginary); such points are reported but never classified.
struct FixedPointReport {
    std::string family;                     // "i", "ii", "iii", "iv"
    std::complex<double> x;
    std::complex<double> y;
    std::complex<double> lambda1;
    std::complex<double> lambda2;
    double lambda_sq;
    bool complex_location = false;
    StabilityClass cls = StabilityClass::Degenerate;
};

struct TrajectorySample {
    double t, x, y, H;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double dt = 0.0;
    std::string method = "rk4";
    bool blew_up = false;       // integration stopped on a non-finite state
    double max_h_drift = 0.0;   // max |H(t) - H(0)| over the samples
};

struct ScanRow {
    double g;
    std::string family;
    double re_lambda;
    double im_lambda;
    StabilityClass cls;
};

// (y + g x y, 1 - 2x^2 - g y^2 / 2)
PhaseState vector_field(const ModelParams& p, const PhaseState& s);

// [[g y, 1 + g x], [-4x, -g y]]
Mat2 jacobian(const ModelParams& p, const PhaseState& s);

// Always contains (+-1/sqrt 2, 0). The (-1/g, +-sqrt((2/g)(1 - 2/g^2)))
// pair is included when the discriminant is >= 0, or as a complex pair
// when include_complex is set. g = 0 yields only the first two points.
std::vector<FixedPointReport> fixed_points(const ModelParams& p,
                                           bool include_complex = false);

// Center if lambda^2 < -tol, Saddle if lambda^2 > tol, Degenerate in
// between (tol is relative to max(1, |lambda^2|)). Throws
// NonRealFixedPoint for complex locations.
StabilityClass classify(const FixedPointReport& fp, double tol = 1e-12);

// One row per (grid g, existing real fixed point), ascending g, family
// order i..iv; grid includes both endpoints.
std::vector<ScanRow> bifurcation_scan(double g_min, double g_max, int steps);

// Fixed-step RK4 with an H column from hamiltonics. Blow-up near saddle
// separatrices yields a partial trajectory tagged blew_up instead of an
// exception.
Trajectory integrate(const ModelParams& p, const PhaseState& s0, double dt,
                     double t_max);

// Time between two successive same-direction crossings of the section
// y = y(0) (crossing direction = initial sign of dy/dt), linearly
// interpolated between samples. Throws NoReturn without two crossings.
double measure_period(const Trajectory& tr);

// CSV emitters; headers "t,x,y,H" and "g,fp,re_lambda,im_lambda,class",
// floats with 17 significant digits, '\n' line endings.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace ptqes::dynamics
