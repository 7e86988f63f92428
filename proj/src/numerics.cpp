#include "ptqes/numerics.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>

namespace ptqes::numerics {

bool Poly::is_zero() const {
    for (double c : coeffs) {
        if (c != 0.0) return false;
    }
    return true;
}

double Poly::eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Poly Poly::monic() const {
    Poly p = *this;
    p.trim();
    if (p.coeffs.empty()) return p;
    const double lead = p.coeffs.back();
    for (double& c : p.coeffs) c /= lead;
    return p;
}

void Poly::trim() {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
}

double find_root_bracketed(const std::function<double(double)>& f,
                           double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw BadParams("find_root_bracketed: tol must be > 0");
    if (lo > hi) std::swap(lo, hi);
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw NoSignChange("find_root_bracketed: f(lo) and f(hi) have the same sign");
    }
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid == lo || mid == hi) break;   // bracket is at ulp resolution
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    // Newton polish with a finite-difference slope, confined to the bracket.
    double r = lo + (hi - lo) / 2.0;
    double fr = f(r);
    for (int i = 0; i < 3 && fr != 0.0; ++i) {
        const double h = 1e-7 * std::max(1.0, std::abs(r));
        const double slope = (f(r + h) - f(r - h)) / (2.0 * h);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        const double next = r - fr / slope;
        if (!(next > lo && next < hi)) break;
        const double fn = f(next);
        if (std::abs(fn) >= std::abs(fr)) break;
        r = next;
        fr = fn;
    }
    return r;
}

namespace {

// Number of eigenvalues of T - x I with negative pivots in the LDL^T
// factorization, i.e. the number of eigenvalues strictly below x.
int eigenvalues_below(const std::vector<double>& d,
                      const std::vector<double>& e2, double x, double pivmin) {
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        q = (i == 0) ? d[0] - x : d[i] - x - e2[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

}  // namespace

std::vector<double> eig_symmetric_tridiagonal(const TriDiag& m) {
    const std::size_t n = m.diag.size();
    if (n == 0) return {};
    if (m.offdiag.size() + 1 != n) {
        throw BadParams("eig_symmetric_tridiagonal: offdiag must have diag size - 1 entries");
    }
    std::vector<double> e2(m.offdiag.size());
    for (std::size_t i = 0; i < e2.size(); ++i) e2[i] = m.offdiag[i] * m.offdiag[i];

    double lo = m.diag[0], hi = m.diag[0], emax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i > 0) ? std::abs(m.offdiag[i - 1]) : 0.0;
        const double right = (i + 1 < n) ? std::abs(m.offdiag[i]) : 0.0;
        lo = std::min(lo, m.diag[i] - left - right);
        hi = std::max(hi, m.diag[i] + left + right);
        emax = std::max({emax, left, right});
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    const double pivmin = std::max(std::numeric_limits<double>::min(),
                                   eps * eps * emax * emax);
    lo -= eps * scale;
    hi += eps * scale;

    std::vector<double> eig(n);
    for (std::size_t k = 0; k < n; ++k) {
        double a = lo, b = hi;
        while (b - a > 4.0 * eps * std::max(1.0, std::max(std::abs(a), std::abs(b)))) {
            const double mid = a + (b - a) / 2.0;
            if (mid == a || mid == b) break;
            if (eigenvalues_below(m.diag, e2, mid, pivmin) >= static_cast<int>(k) + 1) {
                b = mid;
            } else {
                a = mid;
            }
        }
        eig[k] = a + (b - a) / 2.0;
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<std::complex<double>> poly_roots(const Poly& p_in) {
    Poly p = p_in;
    p.trim();
    if (p.is_zero()) throw DegenerateInput("poly_roots: zero polynomial");
    const int n = p.degree();
    if (n < 1) return {};

    std::vector<double> monic(n);
    for (int k = 0; k < n; ++k) monic[k] = p.coeffs[k] / p.coeffs[n];

    // Variable scaling E = s u keeps the companion entries O(1).
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
        if (monic[k] != 0.0) {
            s = std::max(s, std::pow(std::abs(monic[k]), 1.0 / (n - k)));
        }
    }
    if (s == 0.0) s = 1.0;

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -monic[i] / std::pow(s, static_cast<double>(n - i));
    }

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = s * solver.eigenvalues()[i];
    std::sort(roots.begin(), roots.end(), [](const auto& l, const auto& r) {
        if (l.real() != r.real()) return l.real() < r.real();
        return l.imag() < r.imag();
    });
    return roots;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace ptqes::numerics
