#include "ptqes/bdpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptqes/hamiltonics.hpp"

namespace ptqes::bdpoly {

const char* to_string(Branch b) {
    return b == Branch::Table ? "table" : "printed";
}

const char* to_string(Flavor f) {
    return f == Flavor::Physical ? "physical" : "truncating";
}

const char* to_string(RootMethod m) {
    return m == RootMethod::Tridiagonal ? "tridiagonal" : "companion";
}

double RecursionCoeffs::A() const {
    return -16.0 / (params.g * params.g);
}

double RecursionCoeffs::B(int n) const {
    const double g = params.g;
    const double g3 = g * g * g;
    const double g5 = g3 * g * g;
    return -16.0 * (params.a / g5 - params.b / g3) -
           24.0 * (n - 1) * std::sqrt(2.0 * params.a / g5);
}

double RecursionCoeffs::C(int n) const {
    const double g = params.g;
    const double g5 = g * g * g * g * g;
    const double poly = static_cast<double>(n - 1) * (n - 2);
    if (flavor == Flavor::Physical) {
        const double bracket = 4.0 * params.b * g * g - 3.0 * params.a -
                               2.0 * (2 * n - 3) * std::sqrt(2.0 * params.a * g5);
        return -(32.0 / g5) * poly * bracket;
    }
    return 128.0 * poly * (n - J - 1) * std::sqrt(2.0 * params.a / g5);
}

double RecursionCoeffs::monic_b(int n) const {
    const double g = params.g;
    return params.b / g - params.a / (g * g * g) -
           1.5 * (n - 1) * std::sqrt(2.0 * params.a / g);
}

double RecursionCoeffs::monic_c(int n) const {
    const double g = params.g;
    return -C(n) * g * g * g * g / 256.0;
}

RecursionCoeffs build_recursion(const ModelParams& p, std::optional<int> J,
                                Flavor flavor) {
    if (!(p.g > 0.0)) throw BadParams("build_recursion: requires g > 0");
    if (flavor == Flavor::Truncating && (!J || *J < 1)) {
        throw BadParams("build_recursion: Truncating flavor requires J >= 1");
    }
    RecursionCoeffs rc;
    rc.params = p;
    rc.flavor = flavor;
    rc.J = J.value_or(0);
    return rc;
}

std::vector<double> solve_qes_g(int J, double a, double b, Branch branch) {
    if (J < 1) throw BadParams("solve_qes_g: J must be >= 1");
    if (!(a > 0.0) || !(b > 0.0)) throw BadParams("solve_qes_g: requires a > 0 and b > 0");

    const auto f = [&](double g) {
        return branch_equation<double>(a, b, g, J, branch);
    };
    const double g_hat = std::sqrt(3.0 * a / (4.0 * b));

    double lo, hi;
    int grid;
    if (branch == Branch::Table) {
        lo = g_hat * 1e-9;
        hi = g_hat * (1.0 - 1e-12);
        grid = 2048;
    } else {
        lo = g_hat * (1.0 + 1e-12);
        // beyond the g^2 / g^{5/2} crossover every value is negative again
        const double crossover = std::pow(4.0 * b / (2.0 * (2 * J - 1) * std::sqrt(2.0 * a)), 2.0);
        hi = 10.0 * std::max(1.0, crossover);
        grid = 4096;
    }

    std::vector<double> roots;
    double prev_g = lo, prev_f = f(lo);
    for (int k = 1; k <= grid; ++k) {
        const double g = lo + (hi - lo) * k / grid;
        const double fg = f(g);
        if (prev_f == 0.0) {
            roots.push_back(prev_g);
        } else if ((prev_f < 0.0) != (fg < 0.0)) {
            roots.push_back(numerics::find_root_bracketed(f, prev_g, g, 1e-13));
        }
        prev_g = g;
        prev_f = fg;
    }
    if (prev_f == 0.0) roots.push_back(prev_g);

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double l, double r) {
                                return std::abs(l - r) <= 1e-9 * std::max(1.0, std::abs(l));
                            }),
                roots.end());
    if (roots.empty()) {
        throw NoRoot("solve_qes_g: no root on this branch for the given J");
    }
    return roots;
}

namespace {

// Multiply-add step of the expanded recursion: out = (lin0 + lin1 E) p1 + c p2.
std::vector<double> recursion_step(double lin0, double lin1, double c,
                                   const std::vector<double>& p1,
                                   const std::vector<double>& p2) {
    std::vector<double> out(p1.size() + 1, 0.0);
    for (std::size_t i = 0; i < p1.size(); ++i) {
        out[i] += lin0 * p1[i];
        out[i + 1] += lin1 * p1[i];
    }
    for (std::size_t i = 0; i < p2.size(); ++i) out[i] += c * p2[i];
    return out;
}

// Expands P_n in the variable (E - shift); shift = 0 gives plain E.
std::vector<double> expand(const RecursionCoeffs& rc, int n, bool monic,
                           double shift = 0.0) {
    std::vector<double> p_prev;        // P_{-1} = 0
    std::vector<double> p_cur = {1.0}; // P_0 = 1
    for (int k = 1; k <= n; ++k) {
        std::vector<double> next =
            monic ? recursion_step(shift - rc.monic_b(k), 1.0, -rc.monic_c(k),
                                   p_cur, p_prev)
                  : recursion_step(rc.B(k) + rc.A() * shift, rc.A(), rc.C(k),
                                   p_cur, p_prev);
        p_prev = std::move(p_cur);
        p_cur = std::move(next);
    }
    return p_cur;
}

std::vector<double> tridiagonal_roots(const RecursionCoeffs& rc, int J) {
    numerics::TriDiag m;
    m.diag.resize(J);
    m.offdiag.resize(J - 1);
    for (int n = 1; n <= J; ++n) m.diag[n - 1] = rc.monic_b(n);
    for (int n = 2; n <= J; ++n) {
        const double c = rc.monic_c(n);
        if (n >= 3 && c < 0.0) {
            throw NonRealDetected("spectrum: negative Jacobi off-diagonal square c_" +
                                  std::to_string(n));
        }
        m.offdiag[n - 2] = std::sqrt(std::max(c, 0.0));
    }
    return numerics::eig_symmetric_tridiagonal(m);
}

std::vector<double> companion_roots(const RecursionCoeffs& rc, int J) {
    // Expanding about the root mean (the Jacobi-matrix trace over J) keeps
    // the companion matrix well conditioned; far from the origin the raw
    // expansion loses several digits by J = 10.
    double center = 0.0;
    for (int n = 1; n <= J; ++n) center += rc.monic_b(n);
    center /= J;

    numerics::Poly monic;
    monic.coeffs = expand(rc, J, /*monic=*/true, center);
    const auto roots = numerics::poly_roots(monic);
    std::vector<double> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(center + r.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CriticalPoly critical_polynomial(const RecursionCoeffs& rc, int J) {
    if (rc.flavor != Flavor::Truncating) {
        throw BadParams("critical_polynomial: requires the Truncating flavor");
    }
    if (J < 1) throw BadParams("critical_polynomial: J must be >= 1");
    CriticalPoly cp;
    cp.raw.coeffs = expand(rc, J, /*monic=*/false);
    cp.monic.coeffs = expand(rc, J, /*monic=*/true);
    return cp;
}

QESSpectrum spectrum(const ModelParams& p_in, int J, double g, RootMethod method) {
    if (J < 1) throw BadParams("spectrum: J must be >= 1");
    if (!(g > 0.0)) throw BadParams("spectrum: requires g > 0");
    ModelParams p = p_in;
    p.g = g;
    const RecursionCoeffs rc = build_recursion(p, J, Flavor::Truncating);

    const std::vector<double> tri = tridiagonal_roots(rc, J);
    const std::vector<double> comp = companion_roots(rc, J);

    QESSpectrum sp;
    sp.J = J;
    sp.g = g;
    sp.energies = (method == RootMethod::Tridiagonal) ? tri : comp;

    double cross = 0.0;
    for (int i = 0; i < J; ++i) {
        cross = std::max(cross, std::abs(tri[i] - comp[i]) /
                                    std::max(1.0, std::abs(tri[i])));
    }

    std::optional<double> certificate;
    for (int n = 3; n <= J; ++n) {
        const double c = rc.monic_c(n);
        certificate = certificate ? std::min(*certificate, c) : c;
    }

    const double structural = p.b / g - p.a / (g * g * g);
    const double largest = sp.energies.back();

    sp.diagnostics.method = method;
    sp.diagnostics.max_cross_method_dev = cross;
    sp.diagnostics.reality_certificate = certificate;
    sp.diagnostics.factorization_max_residual = factorization_check(p, J, g, 5);
    sp.diagnostics.structural_root = structural;
    sp.diagnostics.structural_root_rel_dev =
        std::abs(largest - structural) / std::max(1e-300, std::abs(structural));
    return sp;
}

std::vector<double> closed_forms(const ModelParams& p, int J, double g) {
    if (J != 1 && J != 2) throw BadParams("closed_forms: J must be 1 or 2");
    if (!(g > 0.0)) throw BadParams("closed_forms: requires g > 0");
    const double structural = p.b / g - p.a / (g * g * g);
    if (J == 1) return {structural};
    return {structural - 1.5 * std::sqrt(2.0 * p.a / g), structural};
}

double factorization_check(const ModelParams& p_in, int J, double g, int k_max) {
    if (J < 1 || k_max < 1) {
        throw BadParams("factorization_check: requires J >= 1 and k_max >= 1");
    }
    ModelParams p = p_in;
    p.g = g;
    const RecursionCoeffs rc = build_recursion(p, J, Flavor::Truncating);
    const std::vector<double> roots = tridiagonal_roots(rc, J);

    double e_lo = roots.front(), e_hi = roots.back();
    const double width = std::max(e_hi - e_lo, 0.1 * std::max(1.0, std::abs(e_lo)));
    e_lo -= 0.05 * width;
    e_hi += 0.05 * width;

    const auto eval = [&](int n, double E) {
        return monic_eval<double>(p.a, p.b, g, J, n, E);
    };

    double worst = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const int n = J + k;
        double scale = 0.0;
        constexpr int kGrid = 128;
        for (int i = 0; i <= kGrid; ++i) {
            const double E = e_lo + (e_hi - e_lo) * i / kGrid;
            scale = std::max(scale, std::abs(eval(n, E)));
        }
        for (double E : roots) {
            worst = std::max(worst, std::abs(eval(n, E)) / scale);
        }
    }
    return worst;
}

namespace {

FlavorDeviation flavor_deviation_at(const ModelParams& p_in, int J, double g) {
    ModelParams p = p_in;
    p.g = g;
    const RecursionCoeffs physical = build_recursion(p, std::nullopt, Flavor::Physical);
    const RecursionCoeffs truncating = build_recursion(p, J, Flavor::Truncating);
    double dev = 0.0;
    for (int n = 3; n <= J + 5; ++n) {
        const double cp = physical.C(n);
        const double ct = truncating.C(n);
        const double denom = std::max(std::abs(cp), std::abs(ct));
        if (denom > 0.0) dev = std::max(dev, std::abs(cp - ct) / denom);
    }
    return {g, dev, dev <= 1e-10};
}

}  // namespace

FlavorEquivalenceReport flavor_equivalence(const ModelParams& p, int J) {
    if (J < 1) throw BadParams("flavor_equivalence: J must be >= 1");
    FlavorEquivalenceReport report;

    const double table_g = solve_qes_g(J, p.a, p.b, Branch::Table).front();
    report.table = flavor_deviation_at(p, J, table_g);

    try {
        for (double g : solve_qes_g(J, p.a, p.b, Branch::Printed)) {
            report.printed.push_back(flavor_deviation_at(p, J, g));
        }
    } catch (const NoRoot&) {
        // the printed branch has no root for this J; report it as empty
    }
    return report;
}

EtaSeries eta_series(const ModelParams& p, double e_star, int n_max) {
    if (!(p.g > 0.0)) throw BadParams("eta_series: requires g > 0");
    if (n_max < 3) throw BadParams("eta_series: n_max must be >= 3");

    const hamiltonics::ReducedEquation eq = hamiltonics::reduced_equation(p, e_star);

    EtaSeries series;
    series.e_star = e_star;
    series.h.assign(n_max + 1, 0.0);
    series.h[1] = 1.0;
    for (int n = 2; n <= n_max; ++n) {
        series.h[n] = ((8.0 * eq.alpha * (n - 1) - eq.c0) * series.h[n - 1] +
                       (16.0 * eq.beta * (n - 2) - eq.c2) * series.h[n - 2]) /
                      (4.0 * n * (n - 1));
    }

    double total_max = 0.0;
    for (double h : series.h) total_max = std::max(total_max, std::abs(h));
    std::vector<double> suffix_max(series.h.size() + 1, 0.0);
    for (int n = n_max; n >= 0; --n) {
        suffix_max[n] = std::max(suffix_max[n + 1], std::abs(series.h[n]));
    }
    constexpr double kTruncTol = 1e-10;
    for (int n = 2; n <= n_max; ++n) {
        if (suffix_max[n] <= kTruncTol * total_max) {
            series.truncation_index = n;
            series.tail_max_rel = suffix_max[n] / total_max;
            break;
        }
    }

    if (series.truncation_index) {
        // eta is (numerically) the polynomial sum_{k < truncation_index} h_k Q^{2k}
        const int top = *series.truncation_index - 1;
        const auto psi = [&](double Q) {
            double eta = 0.0, deta = 0.0, d2eta = 0.0;
            for (int k = top; k >= 1; --k) {
                const double hk = series.h[k];
                const double q2k = std::pow(Q, 2 * k);
                eta += hk * q2k;
                deta += hk * 2.0 * k * q2k / Q;
                d2eta += hk * 2.0 * k * (2.0 * k - 1) * q2k / (Q * Q);
            }
            const double u = 2.0 * eq.alpha * Q + 4.0 * eq.beta * Q * Q * Q;
            const double du = 2.0 * eq.alpha + 12.0 * eq.beta * Q * Q;
            const double F = std::exp(-eq.alpha * Q * Q - eq.beta * Q * Q * Q * Q);
            const double dF = -u * F;
            const double d2F = (u * u - du) * F;
            return hamiltonics::PsiEval{F * eta, dF * eta + F * deta,
                                        d2F * eta + 2.0 * dF * deta + F * d2eta};
        };
        std::vector<double> samples;
        for (int i = 0; i <= 50; ++i) samples.push_back(0.1 + 1.9 * i / 50.0);
        series.residual = hamiltonics::schrodinger_residual(p, e_star, psi, samples);
    }
    return series;
}

const std::vector<PublishedRow>& published_table() {
    // Reference rows at a = 2/3, b = 1. The J = 9 eighth entry is printed
    // without its minus sign in the source table; it is stored sign-normalized
    // (the row is otherwise consistent and strictly ascending).
    static const std::vector<PublishedRow> rows = {
        {1, 0.58865, {-0.0816416}},
        {2, 0.477122, {-6.54954, -4.04201}},
        {3, 0.417704, {-22.2131, -19.0432, -16.0817}},
        {4, 0.378671, {-18.3508, -15.1846, -12.2638, -9.63704}},
        {5, 0.350273, {-24.8198, -21.4534, -18.2845, -15.3393, -12.6578}},
        {6, 0.328305, {-31.5698, -28.0402, -24.6776, -21.4987, -18.5262, -15.7939}},
        {7, 0.310597,
         {-38.5594, -34.8914, -31.3689, -28.0037, -24.8105, -21.8095, -19.0297}},
        {8, 0.295893,
         {-45.7593, -41.9705, -38.3112, -34.7902, -31.4180, -28.2082, -25.1785,
          -22.3542}},
        {9, 0.283408,
         {-53.1465, -49.2503, -45.4712, -41.8159, -38.2924, -34.9105, -31.6825,
          -28.6244, -25.7584}},
        {10, 0.272619,
         {-60.7037, -56.7107, -38.3112, -49.051, -45.3961, -41.8674, -38.4739,
          -35.2268, -32.1407, -29.2352}},
    };
    return rows;
}

DiscrepancyReport reproduce_published_table(int j_max) {
    const auto& published = published_table();
    if (j_max < 1 || j_max > static_cast<int>(published.size())) {
        throw BadParams("reproduce_published_table: j_max must be in 1..10");
    }
    constexpr double kGTol = 1e-5;
    constexpr double kETol = 1e-3;

    ModelParams p;   // canonical a = 2/3, b = 1
    DiscrepancyReport report;
    report.method = "tridiagonal (companion cross-checked)";
    report.max_table_g = 0.0;

    for (int J = 1; J <= j_max; ++J) {
        const PublishedRow& row = published[J - 1];
        TableRow out;
        out.J = J;
        out.g_published = row.g;
        out.g_recomputed = solve_qes_g(J, p.a, p.b, Branch::Table).front();
        out.g_match = std::abs(out.g_published - out.g_recomputed) <= kGTol;
        report.max_table_g = std::max(report.max_table_g, out.g_recomputed);

        QESSpectrum sp = spectrum(p, J, out.g_recomputed, RootMethod::Tridiagonal);
        out.row_match = out.g_match;
        for (int i = 0; i < J; ++i) {
            EnergyEntry entry;
            entry.index = i + 1;
            entry.published = row.energies[i];
            entry.recomputed = sp.energies[i];
            entry.match = std::abs(entry.published - entry.recomputed) <= kETol;
            out.row_match = out.row_match && entry.match;
            out.energies.push_back(entry);
        }
        report.rows.push_back(std::move(out));
    }
    report.max_g_matches_published =
        std::abs(report.max_table_g - published.front().g) <= kGTol;
    return report;
}

}  // namespace ptqes::bdpoly
