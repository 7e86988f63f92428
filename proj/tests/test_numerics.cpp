#include "ptqes/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "doctest.h"
#include "golden_values.hpp"
#include "ptqes/bigfloat.hpp"

using namespace ptqes;
using numerics::Poly;
using numerics::TriDiag;

TEST_CASE("find_root_bracketed: sqrt(2) on [1,2]") {
    const double r = numerics::find_root_bracketed(
        [](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-12);
    CHECK(std::abs(r - std::sqrt(2.0)) <= 1e-12);
    // the returned point still certifies the sign change
    const auto f = [](double x) { return x * x - 2.0; };
    CHECK(f(r - 1e-9) * f(r + 1e-9) < 0.0);
}

TEST_CASE("find_root_bracketed: odd function through zero") {
    const double r = numerics::find_root_bracketed(
        [](double x) { return x; }, -1.0, 1.0, 1e-14);
    CHECK(std::abs(r) <= 1e-14);
}

TEST_CASE("find_root_bracketed: quantization condition at J = 1") {
    const double a = 2.0 / 3.0, b = 1.0;
    const auto f = [&](double g) {
        return (3.0 * a - 4.0 * b * g * g) -
               2.0 * std::sqrt(2.0 * a * std::pow(g, 5.0));
    };
    const double r = numerics::find_root_bracketed(f, 0.1, 0.7, 1e-12);
    CHECK(r == doctest::Approx(golden::kTableG[0]).epsilon(1e-12));
    CHECK(std::abs(r - 0.58865) <= 1e-5);
}

TEST_CASE("find_root_bracketed: rejects same-sign endpoints") {
    CHECK_THROWS_AS(numerics::find_root_bracketed(
                        [](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-10),
                    NoSignChange);
}

TEST_CASE("eig_symmetric_tridiagonal: closed-form cases") {
    CHECK(numerics::eig_symmetric_tridiagonal({{5.0}, {}}) ==
          std::vector<double>{5.0});

    const auto eig = numerics::eig_symmetric_tridiagonal({{0.0, 0.0}, {1.0}});
    REQUIRE(eig.size() == 2);
    CHECK(eig[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eig_symmetric_tridiagonal: J = 3 block vs quadratic formula") {
    // 2x2 block that carries the two non-structural J = 3 levels
    const TriDiag m{{golden::kJ3MonicB2, golden::kJ3MonicB3},
                    {std::sqrt(golden::kJ3MonicC3)}};
    const auto eig = numerics::eig_symmetric_tridiagonal(m);

    // independent oracle: characteristic quadratic of the same block
    const double tr = golden::kJ3MonicB2 + golden::kJ3MonicB3;
    const double det =
        golden::kJ3MonicB2 * golden::kJ3MonicB3 - golden::kJ3MonicC3;
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    REQUIRE(eig.size() == 2);
    CHECK(eig[0] == doctest::Approx((tr - disc) / 2.0).epsilon(1e-13));
    CHECK(eig[1] == doctest::Approx((tr + disc) / 2.0).epsilon(1e-13));
    CHECK(std::abs(eig[0] - (-12.2254)) <= 1e-3);
    CHECK(std::abs(eig[1] - (-9.3218)) <= 1e-3);
}

TEST_CASE("eig_symmetric_tridiagonal: random matrices vs dense eigensolver") {
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_int_distribution<int> dim(1, 12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = dim(rng);
        TriDiag m;
        for (int i = 0; i < n; ++i) m.diag.push_back(coef(rng));
        for (int i = 0; i + 1 < n; ++i) m.offdiag.push_back(coef(rng));

        Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) dense(i, i) = m.diag[i];
        for (int i = 0; i + 1 < n; ++i) {
            dense(i, i + 1) = dense(i + 1, i) = m.offdiag[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(dense);

        const auto eig = numerics::eig_symmetric_tridiagonal(m);
        REQUIRE(static_cast<int>(eig.size()) == n);
        for (int i = 0; i < n; ++i) {
            CHECK(eig[i] == doctest::Approx(ref.eigenvalues()[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("poly_roots: low-degree exact cases") {
    const auto quad = numerics::poly_roots(Poly{{-1.0, 0.0, 1.0}});
    REQUIRE(quad.size() == 2);
    CHECK(quad[0].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(quad[1].real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(quad[0].imag()) <= 1e-12);

    const auto lin = numerics::poly_roots(Poly{{0.0, 1.0}});
    REQUIRE(lin.size() == 1);
    CHECK(std::abs(lin[0]) <= 1e-15);

    CHECK_THROWS_AS(numerics::poly_roots(Poly{{0.0, 0.0}}), DegenerateInput);
}

TEST_CASE("poly_roots: quadratic critical polynomial vs closed form") {
    // coefficients written out longhand from the two-level closed form
    const double a = 2.0 / 3.0, b = 1.0, g = 0.477122;
    const double g2 = g * g, g3 = g2 * g, g5 = g3 * g2;
    const double qa = 1.0 / (g2 * g2);
    const double qb =
        (2.0 * a / g5 - 2.0 * b / g3 + 1.5 * std::sqrt(2.0 * a / g5)) / g2;
    const double qc = (a / g5 - b / g3 + 1.5 * std::sqrt(2.0 * a / g5)) *
                      (a / g5 - b / g3);
    const auto roots = numerics::poly_roots(Poly{{qc, qb, qa}});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].real() ==
          doctest::Approx(golden::kSpectrumJ2AtPublishedG[0]).epsilon(1e-10));
    CHECK(roots[1].real() ==
          doctest::Approx(golden::kSpectrumJ2AtPublishedG[1]).epsilon(1e-10));
    CHECK(std::abs(roots[0].real() - (-6.54950)) <= 1e-3);
    CHECK(std::abs(roots[1].real() - (-4.04198)) <= 1e-3);
}

TEST_CASE("rk4_step: trivial flows") {
    const auto zero = [](const PhaseState&) { return PhaseState{0.0, 0.0}; };
    const PhaseState s0{0.3, -0.7};
    const PhaseState fixed = numerics::rk4_step(zero, s0, 0.25);
    CHECK(fixed.x == s0.x);
    CHECK(fixed.y == s0.y);

    const auto constant = [](const PhaseState&) { return PhaseState{1.0, 0.0}; };
    const PhaseState moved = numerics::rk4_step(constant, PhaseState{0.0, 0.0}, 0.5);
    CHECK(moved.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(moved.y == 0.0);
}

TEST_CASE("rk4_step: exponential flow has O(dt^5) local error") {
    const auto growth = [](double s) { return s; };
    const double next = numerics::rk4_step(growth, 1.0, 0.1);
    CHECK(std::abs(next - std::exp(0.1)) <= 1e-7);
}

TEST_CASE("rk4_step: rotation flow matches the matrix exponential per step") {
    const auto rot = [](const PhaseState& s) { return PhaseState{-s.y, s.x}; };
    const double dt = 0.01;
    const PhaseState s = numerics::rk4_step(rot, PhaseState{1.0, 0.0}, dt);
    CHECK(std::abs(s.x - std::cos(dt)) <= std::pow(dt, 5.0));
    CHECK(std::abs(s.y - std::sin(dt)) <= std::pow(dt, 5.0));
}

TEST_CASE("rk4_step: overflow raises NonFiniteState") {
    const auto quadratic = [](double s) { return s * s; };
    CHECK_THROWS_AS(numerics::rk4_step(quadratic, 1e200, 1.0), NonFiniteState);
}

TEST_CASE("big_float bisection refines a double root") {
    using Real = numerics::big_float<200>;
    const auto f = [](Real x) { return x * x - 2; };
    const Real r = numerics::bisect_root<Real>(f, Real(1), Real(2), 400);
    CHECK(std::abs(static_cast<double>(r) - std::sqrt(2.0)) <= 1e-15);
}
