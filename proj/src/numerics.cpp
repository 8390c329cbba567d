#include "fbrd/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace fbrd::num {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const Fn1& f, double a, double m, double b, double fa, double fm,
                            double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth <= 0) throw NumericalError("adaptive_simpson: max depth reached");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const Fn1& f, double a, double b, double abs_tol) {
    if (a == b) return 0.0;
    const double sign = (b >= a) ? 1.0 : -1.0;
    if (b < a) std::swap(a, b);
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, a, b);
    return sign * adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, abs_tol, 60);
}

double bisect(const Fn1& f, double lo, double hi, double xtol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0)) throw NumericalError("bisect: no sign change in bracket");
    for (int i = 0; i < max_iter && (hi - lo) > xtol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0))
            lo = mid, flo = fm;
        else
            hi = mid, fhi = fm;
    }
    return 0.5 * (lo + hi);
}

double brent(const Fn1& f, double lo, double hi, double xtol, int max_iter) {
    double a = lo, b = hi, fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw NumericalError("brent: no sign change in bracket");
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool mflag = true;
    for (int i = 0; i < max_iter; ++i) {
        if (fb == 0 || std::abs(b - a) < xtol) return b;
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double m = 0.5 * (a + b);
        const bool cond = (s < std::min(m, b) || s > std::max(m, b)) ||
                          (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
                          (!mflag && std::abs(s - b) >= 0.5 * std::abs(c - d)) ||
                          (mflag && std::abs(b - c) < xtol) || (!mflag && std::abs(c - d) < xtol);
        if (cond) {
            s = m;
            mflag = true;
        } else {
            mflag = false;
        }
        const double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if ((fa > 0) != (fs > 0))
            b = s, fb = fs;
        else {
            // shrink from the a side
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

void solve_tridiagonal(std::span<double> lower, std::span<double> diag, std::span<double> upper,
                       std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
}

namespace {

// One inverse-iteration pass for (T - shift I) on a symmetric tridiagonal T.
void shifted_solve(const std::vector<double>& d, const std::vector<double>& e, double shift,
                   std::vector<double>& v, std::vector<double>& dl, std::vector<double>& dd,
                   std::vector<double>& du) {
    const std::size_t n = d.size();
    dd.assign(n, 0.0);
    dl.assign(n, 0.0);
    du.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = d[i] - shift;
    for (std::size_t i = 1; i < n; ++i) dl[i] = e[i - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) du[i] = e[i];
    solve_tridiagonal(dl, dd, du, v);
}

}  // namespace

namespace {

// Number of eigenvalues of the symmetric tridiagonal (d, e) below x, via the
// sign count of the LDL^T recurrence.
int eigs_below(const std::vector<double>& d, const std::vector<double>& e, double x) {
    const std::size_t n = d.size();
    int count = 0;
    double q = d[0] - x;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        const double denom = (q == 0) ? 1e-300 : q;
        q = (d[i] - x) - e[i - 1] * e[i - 1] / denom;
        if (q < 0) ++count;
    }
    return count;
}

}  // namespace

double smallest_eig_tridiagonal(const std::vector<double>& d, const std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n == 0 || e.size() + 1 != n) throw UsageError("smallest_eig_tridiagonal: bad sizes");

    // Bracket the smallest eigenvalue by Gershgorin, isolate it by Sturm
    // bisection; this pins a shift for which inverse iteration targets the
    // right eigenpair regardless of gap sizes.
    double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    double scale = std::max(std::abs(lo), std::abs(hi));
    for (int it = 0; it < 90 && (hi - lo) > 1e-11 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eigs_below(d, e, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }

    for (int attempt = 0; attempt < 3; ++attempt) {
        const double gap = std::max(hi - lo, 1e-11 * scale);
        const double shift = lo - (1.0 + attempt) * gap;
        std::vector<double> v(n, 1.0), av(n), dl, dd, du;
        double rho_prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 50; ++it) {
            shifted_solve(d, e, shift, v, dl, dd, du);
            double norm = 0;
            for (double x : v) norm += x * x;
            norm = std::sqrt(norm);
            if (!(norm > 0) || !std::isfinite(norm)) break;
            for (double& x : v) x /= norm;

            for (std::size_t i = 0; i < n; ++i) {
                av[i] = d[i] * v[i];
                if (i > 0) av[i] += e[i - 1] * v[i - 1];
                if (i + 1 < n) av[i] += e[i] * v[i + 1];
            }
            double rho = 0, res = 0;
            for (std::size_t i = 0; i < n; ++i) rho += v[i] * av[i];
            for (std::size_t i = 0; i < n; ++i) {
                const double r = av[i] - rho * v[i];
                res += r * r;
            }
            res = std::sqrt(res);
            if (res <= 1e-11 * scale && std::abs(rho - rho_prev) <= 1e-13 * scale) return rho;
            rho_prev = rho;
        }
    }
    throw NumericalError("smallest_eig_tridiagonal: inverse iteration did not converge");
}

double least_squares_slope(std::span<const double> xs, std::span<const double> ys, std::size_t i0,
                           std::size_t i1) {
    if (i1 <= i0 + 1 || i1 > xs.size()) throw UsageError("least_squares_slope: bad window");
    const double n = static_cast<double>(i1 - i0);
    double sx = 0, sy = 0;
    for (std::size_t i = i0; i < i1; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = i0; i < i1; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw UsageError("least_squares_slope: degenerate abscissa");
    return sxy / sxx;
}

double interp_linear(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.empty() || xs.size() != ys.size()) throw UsageError("interp_linear: bad arrays");
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
}

}  // namespace fbrd::num
