#include "ptqes/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "ptqes/format.hpp"
#include "ptqes/hamiltonics.hpp"
#include "ptqes/numerics.hpp"

namespace ptqes::dynamics {

const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::Center: return "Center";
        case StabilityClass::Saddle: return "Saddle";
        case StabilityClass::Degenerate: return "Degenerate";
        case StabilityClass::NonReal: return "NonReal";
    }
    return "?";
}

PhaseState vector_field(const ModelParams& p, const PhaseState& s) {
    return {s.y + p.g * s.x * s.y, 1.0 - 2.0 * s.x * s.x - p.g * s.y * s.y / 2.0};
}

Mat2 jacobian(const ModelParams& p, const PhaseState& s) {
    return {p.g * s.y, 1.0 + p.g * s.x, -4.0 * s.x, -p.g * s.y};
}

namespace {

std::complex<double> principal_lambda(double lambda_sq) {
    if (lambda_sq >= 0.0) return {std::sqrt(lambda_sq), 0.0};
    return {0.0, std::sqrt(-lambda_sq)};
}

FixedPointReport make_real_point(const std::string& family, double x, double y,
                                 double lambda_sq, double tol) {
    FixedPointReport fp;
    fp.family = family;
    fp.x = x;
    fp.y = y;
    fp.lambda_sq = lambda_sq;
    fp.lambda1 = principal_lambda(lambda_sq);
    fp.lambda2 = -fp.lambda1;
    fp.complex_location = false;
    fp.cls = classify(fp, tol);
    return fp;
}

}  // namespace

std::vector<FixedPointReport> fixed_points(const ModelParams& p, bool include_complex) {
    constexpr double kTol = 1e-12;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<FixedPointReport> out;

    // y = 0 families: lambda^2 = -4 x (1 + g x)
    out.push_back(make_real_point(
        "i", inv_sqrt2, 0.0, -4.0 * inv_sqrt2 * (1.0 + p.g * inv_sqrt2), kTol));
    out.push_back(make_real_point(
        "ii", -inv_sqrt2, 0.0, 4.0 * inv_sqrt2 * (1.0 - p.g * inv_sqrt2), kTol));

    if (p.g == 0.0) return out;

    // x = -1/g families: y*^2 = (2/g)(1 - 2/g^2), lambda^2 = g^2 y*^2
    const double disc = (2.0 / p.g) * (1.0 - 2.0 / (p.g * p.g));
    const double lambda_sq = p.g * p.g * disc;
    const double x_star = -1.0 / p.g;

    if (std::abs(disc) <= kTol) {
        // boundary g = +-sqrt(2): the pair coincides on the y = 0 axis
        out.push_back(make_real_point("iii", x_star, 0.0, 0.0, kTol));
        out.push_back(make_real_point("iv", x_star, 0.0, 0.0, kTol));
    } else if (disc > 0.0) {
        const double y_star = std::sqrt(disc);
        out.push_back(make_real_point("iii", x_star, y_star, lambda_sq, kTol));
        out.push_back(make_real_point("iv", x_star, -y_star, lambda_sq, kTol));
    } else if (include_complex) {
        const double y_mag = std::sqrt(-disc);
        for (int sgn : {+1, -1}) {
            FixedPointReport fp;
            fp.family = (sgn > 0) ? "iii" : "iv";
            fp.x = x_star;
            fp.y = {0.0, sgn * y_mag};
            fp.lambda_sq = lambda_sq;
            fp.lambda1 = principal_lambda(lambda_sq);
            fp.lambda2 = -fp.lambda1;
            fp.complex_location = true;
            fp.cls = StabilityClass::NonReal;
            out.push_back(fp);
        }
    }
    return out;
}

StabilityClass classify(const FixedPointReport& fp, double tol) {
    if (fp.complex_location) {
        throw NonRealFixedPoint("classify: fixed point location is complex");
    }
    const double threshold = tol * std::max(1.0, std::abs(fp.lambda_sq));
    if (fp.lambda_sq < -threshold) return StabilityClass::Center;
    if (fp.lambda_sq > threshold) return StabilityClass::Saddle;
    return StabilityClass::Degenerate;
}

std::vector<ScanRow> bifurcation_scan(double g_min, double g_max, int steps) {
    if (steps < 2) throw BadParams("bifurcation_scan: steps must be >= 2");
    if (g_min > g_max) std::swap(g_min, g_max);
    std::vector<ScanRow> rows;
    for (int k = 0; k < steps; ++k) {
        ModelParams p;
        p.g = g_min + (g_max - g_min) * k / (steps - 1);
        for (const auto& fp : fixed_points(p, /*include_complex=*/false)) {
            rows.push_back({p.g, fp.family, fp.lambda1.real(), fp.lambda1.imag(),
                            fp.cls});
        }
    }
    return rows;
}

Trajectory integrate(const ModelParams& p, const PhaseState& s0, double dt,
                     double t_max) {
    if (!(dt > 0.0) || !(t_max > dt)) {
        throw BadParams("integrate: requires dt > 0 and t_max > dt");
    }
    const auto rhs = [&p](const PhaseState& s) { return vector_field(p, s); };
    const long n_steps = static_cast<long>(std::floor(t_max / dt + 1e-9));

    Trajectory tr;
    tr.dt = dt;
    tr.samples.reserve(static_cast<std::size_t>(n_steps) + 1);

    PhaseState s = s0;
    const double h0 = hamiltonics::hamiltonian_value(p, s);
    tr.samples.push_back({0.0, s.x, s.y, h0});
    for (long k = 1; k <= n_steps; ++k) {
        try {
            s = numerics::rk4_step(rhs, s, dt);
        } catch (const NonFiniteState&) {
            tr.blew_up = true;
            break;
        }
        const double h = hamiltonics::hamiltonian_value(p, s);
        tr.samples.push_back({k * dt, s.x, s.y, h});
        if (std::isfinite(h)) {
            tr.max_h_drift = std::max(tr.max_h_drift, std::abs(h - h0));
        } else {
            tr.blew_up = true;
            break;
        }
    }
    return tr;
}

double measure_period(const Trajectory& tr) {
    const auto& s = tr.samples;
    if (s.size() < 3) throw NoReturn("measure_period: trajectory too short");
    const double y0 = s[0].y;

    // crossing direction = sign of dy/dt at the start
    double dir = 0.0;
    for (std::size_t i = 1; i < s.size() && dir == 0.0; ++i) {
        const double d = s[i].y - s[i - 1].y;
        if (d != 0.0) dir = d > 0.0 ? 1.0 : -1.0;
    }
    if (dir == 0.0) throw NoReturn("measure_period: trajectory never leaves the section");

    std::vector<double> crossings;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double prev = dir * (s[i].y - y0);
        const double next = dir * (s[i + 1].y - y0);
        if (prev <= 0.0 && next > 0.0) {
            const double frac = (y0 - s[i].y) / (s[i + 1].y - s[i].y);
            crossings.push_back(s[i].t + frac * (s[i + 1].t - s[i].t));
            if (crossings.size() == 2) {
                return crossings[1] - crossings[0];
            }
        }
    }
    throw NoReturn("measure_period: no second same-direction section crossing");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t,x,y,H\n";
    for (const auto& smp : tr.samples) {
        os << format_float(smp.t) << ',' << format_float(smp.x) << ','
           << format_float(smp.y) << ',' << format_float(smp.H) << '\n';
    }
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
    os << "g,fp,re_lambda,im_lambda,class\n";
    for (const auto& row : rows) {
        os << format_float(row.g) << ',' << row.family << ','
           << format_float(row.re_lambda) << ',' << format_float(row.im_lambda)
           << ',' << to_string(row.cls) << '\n';
    }
}

}  // namespace ptqes::dynamics
