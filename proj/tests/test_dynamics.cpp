#include "ptqes/dynamics.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "golden_values.hpp"
#include "ptqes/hamiltonics.hpp"

using namespace ptqes;
namespace dyn = ptqes::dynamics;
using dyn::StabilityClass;

namespace {

ModelParams params(double g) {
    ModelParams p;
    p.g = g;
    return p;
}

const dyn::FixedPointReport* find_family(const std::vector<dyn::FixedPointReport>& fps,
                                         const std::string& family) {
    for (const auto& fp : fps) {
        if (fp.family == family) return &fp;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("vector_field: point values") {
    const PhaseState zero = dyn::vector_field(params(1.0), {1.0 / std::sqrt(2.0), 0.0});
    CHECK(std::abs(zero.x) <= 1e-15);
    CHECK(std::abs(zero.y) <= 1e-15);

    const PhaseState origin = dyn::vector_field(params(0.0), {0.0, 0.0});
    CHECK(origin.x == 0.0);
    CHECK(origin.y == 1.0);

    // direct substitution: (y + gxy, 1 - 2x^2 - g y^2/2) at g=2, (1,1)
    const PhaseState v = dyn::vector_field(params(2.0), {1.0, 1.0});
    CHECK(v.x == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(v.y == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("jacobian: analytic entries") {
    const dyn::Mat2 at_origin = dyn::jacobian(params(0.8), {0.0, 0.0});
    CHECK(at_origin.a11 == 0.0);
    CHECK(at_origin.a12 == 1.0);
    CHECK(at_origin.a21 == 0.0);
    CHECK(at_origin.a22 == 0.0);

    const double s = 1.0 / std::sqrt(2.0);
    const dyn::Mat2 at_center = dyn::jacobian(params(1.0), {s, 0.0});
    CHECK(at_center.a11 == 0.0);
    CHECK(at_center.a12 == doctest::Approx(1.0 + s).epsilon(1e-15));
    CHECK(at_center.a21 == doctest::Approx(-4.0 * s).epsilon(1e-15));
    CHECK(at_center.a22 == 0.0);
}

TEST_CASE("jacobian matches finite differences of the vector field") {
    std::mt19937_64 rng(40404);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_real_distribution<double> gdist(-2.0, 2.0);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        const ModelParams p = params(gdist(rng));
        const PhaseState s{coord(rng), coord(rng)};
        const dyn::Mat2 jac = dyn::jacobian(p, s);
        const auto fd = [&](bool wrt_x, bool comp_x) {
            PhaseState lo = s, hi = s;
            (wrt_x ? lo.x : lo.y) -= h;
            (wrt_x ? hi.x : hi.y) += h;
            const PhaseState flo = dyn::vector_field(p, lo);
            const PhaseState fhi = dyn::vector_field(p, hi);
            return ((comp_x ? fhi.x : fhi.y) - (comp_x ? flo.x : flo.y)) / (2 * h);
        };
        CHECK(std::abs(fd(true, true) - jac.a11) <= 1e-6);
        CHECK(std::abs(fd(false, true) - jac.a12) <= 1e-6);
        CHECK(std::abs(fd(true, false) - jac.a21) <= 1e-6);
        CHECK(std::abs(fd(false, false) - jac.a22) <= 1e-6);
    }
}

TEST_CASE("fixed_points: families and residuals") {
    // g = 1: only the y = 0 pair is real
    const auto two = dyn::fixed_points(params(1.0));
    CHECK(two.size() == 2);

    // g = 2: all four real, each annihilating the vector field
    const auto four = dyn::fixed_points(params(2.0));
    REQUIRE(four.size() == 4);
    const auto* third = find_family(four, "iii");
    REQUIRE(third != nullptr);
    CHECK(third->x.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(third->y.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    for (const auto& fp : four) {
        const PhaseState residual =
            dyn::vector_field(params(2.0), {fp.x.real(), fp.y.real()});
        CHECK(std::hypot(residual.x, residual.y) <= 1e-12);
    }

    // boundary g = sqrt(2): third/fourth coincide on the axis
    const auto boundary = dyn::fixed_points(params(std::sqrt(2.0)));
    REQUIRE(boundary.size() == 4);
    CHECK(boundary[2].y == std::complex<double>(0.0, 0.0));
    CHECK(boundary[2].cls == StabilityClass::Degenerate);

    // g = 0: the x = -1/g families do not exist
    CHECK(dyn::fixed_points(params(0.0)).size() == 2);
}

TEST_CASE("fixed_points: eigenvalue pair identities") {
    for (double g : {-2.0, -0.7, 0.0, 0.9, 1.5, 2.5}) {
        for (const auto& fp : dyn::fixed_points(params(g), true)) {
            CHECK(std::abs(fp.lambda1 + fp.lambda2) <= 1e-12);
            if (!fp.complex_location) {
                const dyn::Mat2 jac =
                    dyn::jacobian(params(g), {fp.x.real(), fp.y.real()});
                CHECK(std::abs(jac.trace()) <= 1e-12);
                CHECK(std::abs((fp.lambda1 * fp.lambda2).real() - jac.det()) <=
                      1e-12 * std::max(1.0, std::abs(jac.det())));
                CHECK(std::abs((fp.lambda1 * fp.lambda2).imag()) <= 1e-12);
            }
        }
    }
}

TEST_CASE("classify: centers, saddles and the complex guard") {
    const auto fps = dyn::fixed_points(params(1.0));
    REQUIRE(fps.size() == 2);
    CHECK(fps[0].cls == StabilityClass::Center);
    CHECK(fps[1].cls == StabilityClass::Saddle);
    CHECK(fps[1].lambda1.real() ==
          doctest::Approx(golden::kSaddleLambdaAtG1).epsilon(1e-14));

    const auto* third = find_family(dyn::fixed_points(params(2.0)), "iii");
    REQUIRE(third != nullptr);
    CHECK(third->lambda_sq == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(third->cls == StabilityClass::Saddle);

    const auto complex_fps = dyn::fixed_points(params(1.0), true);
    REQUIRE(complex_fps.size() == 4);
    CHECK(complex_fps[2].cls == StabilityClass::NonReal);
    CHECK_THROWS_AS(dyn::classify(complex_fps[2], 1e-12), NonRealFixedPoint);
}

TEST_CASE("bifurcation_scan: transitions pinned to +-sqrt(2)") {
    const auto rows = dyn::bifurcation_scan(-2.0, 2.0, 81);
    REQUIRE(!rows.empty());
    CHECK(rows.front().g == -2.0);
    CHECK(rows.back().g == 2.0);

    double prev_g = rows.front().g;
    for (const auto& row : rows) {
        CHECK(row.g >= prev_g);     // deterministic ascending emission
        prev_g = row.g;
        if (row.family == "i" && row.g > -std::sqrt(2.0) + 1e-6) {
            CHECK(row.cls == StabilityClass::Center);
        }
        if (row.family == "ii") {
            if (row.g < std::sqrt(2.0) - 1e-6) CHECK(row.cls == StabilityClass::Saddle);
            if (row.g > std::sqrt(2.0) + 1e-6) CHECK(row.cls == StabilityClass::Center);
        }
        if (row.family == "iii" || row.family == "iv") {
            CHECK((row.g <= -std::sqrt(2.0) + 1e-6 || row.g >= std::sqrt(2.0) - 1e-6 ||
                   row.g < 0.0) == true);
        }
    }

    // spot classification on each side of the family (ii)/(iii) transitions
    const auto near = dyn::bifurcation_scan(1.40, 1.42, 2);
    const dyn::ScanRow* ii_lo = nullptr;
    const dyn::ScanRow* ii_hi = nullptr;
    const dyn::ScanRow* iii_hi = nullptr;
    for (const auto& row : near) {
        if (row.family == "ii" && row.g == 1.40) ii_lo = &row;
        if (row.family == "ii" && row.g == 1.42) ii_hi = &row;
        if (row.family == "iii" && row.g == 1.42) iii_hi = &row;
    }
    REQUIRE(ii_lo != nullptr);
    REQUIRE(ii_hi != nullptr);
    REQUIRE(iii_hi != nullptr);   // exists only past sqrt(2)
    CHECK(ii_lo->cls == StabilityClass::Saddle);
    CHECK(ii_hi->cls == StabilityClass::Center);
    CHECK(iii_hi->cls == StabilityClass::Saddle);
}

TEST_CASE("integrate: energy conservation near the center") {
    const ModelParams p = params(0.4);
    const dyn::Trajectory tr = dyn::integrate(p, {0.8, 0.0}, 1e-3, 100.0);
    CHECK(!tr.blew_up);
    CHECK(tr.samples.size() == 100001);
    const double h0 = tr.samples.front().H;
    CHECK(tr.max_h_drift <= 1e-8 * std::max(1.0, std::abs(h0)));
}

TEST_CASE("integrate: a fixed point stays put") {
    const double s = 1.0 / std::sqrt(2.0);
    const dyn::Trajectory tr = dyn::integrate(params(0.7), {s, 0.0}, 1e-2, 1.0);
    for (const auto& smp : tr.samples) {
        CHECK(std::abs(smp.x - s) <= 1e-14);
        CHECK(std::abs(smp.y) <= 1e-14);
    }
}

TEST_CASE("integrate: saddle-side blow-up yields a tagged partial trajectory") {
    const dyn::Trajectory tr = dyn::integrate(params(1.0), {-0.8, 0.0}, 1e-3, 50.0);
    CHECK(tr.blew_up);
    CHECK(tr.samples.size() < 50001);
    CHECK_THROWS_AS(dyn::measure_period(tr), NoReturn);
}

TEST_CASE("measure_period: harmonic oracle on a synthetic circle") {
    dyn::Trajectory tr;
    tr.dt = 1e-3;
    for (int i = 0; i <= 14000; ++i) {
        const double t = i * tr.dt;
        tr.samples.push_back({t, std::cos(t), std::sin(t), 0.0});
    }
    CHECK(std::abs(dyn::measure_period(tr) - 2.0 * M_PI) <= 1e-4);
}

TEST_CASE("measure_period: small oscillation about the center") {
    const ModelParams p = params(0.4);
    const dyn::Trajectory tr =
        dyn::integrate(p, {1.0 / std::sqrt(2.0) + 1e-3, 0.0}, 1e-3, 20.0);
    const double period = dyn::measure_period(tr);
    CHECK(std::abs(period - golden::kPeriodAtG04) <= 0.005 * golden::kPeriodAtG04);
}

TEST_CASE("csv emission: headers and 17-digit floats") {
    const dyn::Trajectory tr = dyn::integrate(params(0.4), {0.8, 0.0}, 0.25, 1.0);
    std::ostringstream os;
    dyn::write_trajectory_csv(os, tr);
    const std::string text = os.str();
    CHECK(text.rfind("t,x,y,H\n", 0) == 0);
    CHECK(text.find("0.80000000000000004") != std::string::npos);

    std::ostringstream os2;
    dyn::write_scan_csv(os2, dyn::bifurcation_scan(1.0, 2.0, 3));
    CHECK(os2.str().rfind("g,fp,re_lambda,im_lambda,class\n", 0) == 0);
    CHECK(os2.str().find("Saddle") != std::string::npos);
}
