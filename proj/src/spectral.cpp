#include "fbrd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbrd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// theta1 = sqrt(-(g'(0)+lambda)), theta2 = sqrt(f'(0)+lambda); both positive
// on the admissible band lambda in (-f'(0), -g'(0)).
struct Thetas {
    double t1, t2;
};

Thetas thetas(double lambda, const ReactionPair& p) {
    return {std::sqrt(-(p.gp0 + lambda)), std::sqrt(p.fp0 + lambda)};
}

// Invert a decreasing lambda -> length relation on (-fp0, -gp0) by bisection.
double invert_dispersion(double L, const ReactionPair& p,
                         const std::function<double(double)>& length_of) {
    if (!(L > 0)) throw UsageError("lambda1: L must be positive");
    const double eps = 1e-14 * std::max(1.0, p.fp0 - (-p.gp0));
    double lo = -p.fp0 + eps;   // length -> +inf
    double hi = -p.gp0 - eps;   // length -> 0
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double Lm = length_of(mid);
        if (std::abs(Lm - L) <= 1e-10) return mid;
        if (Lm > L)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi)))
            break;
    }
    const double lam = 0.5 * (lo + hi);
    if (std::abs(length_of(lam) - L) > 1e-10)
        throw NumericalError("lambda1: dispersion inversion residual above 1e-10");
    return lam;
}

}  // namespace

double connected_length_of_lambda(double lambda, const ReactionPair& p) {
    const auto [t1, t2] = thetas(lambda, p);
    return std::atan(t1 / t2) / t2;
}

double separated_length_of_lambda(double lambda, double L1, const ReactionPair& p) {
    const auto [t1, t2] = thetas(lambda, p);
    return (std::atan((t1 / t2) * std::tanh(t1 * L1)) + std::atan(t1 / t2)) / t2;
}

double lambda1_connected(double L, const ReactionPair& p) {
    return invert_dispersion(L, p, [&](double lam) { return connected_length_of_lambda(lam, p); });
}

double lambda1_separated(double L1, double L, const ReactionPair& p) {
    if (!(L1 > 0)) throw UsageError("lambda1_separated: L1 must be positive");
    return invert_dispersion(
        L, p, [&](double lam) { return separated_length_of_lambda(lam, L1, p); });
}

double L_star(const ReactionPair& p) {
    return std::atan(std::sqrt(-p.gp0 / p.fp0)) / std::sqrt(p.fp0);
}

double L_double_star(const ReactionPair& p) {
    return std::acos(-1.0) / (2.0 * std::sqrt(p.fp0));
}

double tilde_L_star(double L1, const ReactionPair& p) {
    if (!(L1 > 0)) throw UsageError("tilde_L_star: L1 must be positive");
    return separated_length_of_lambda(0.0, L1, p);
}

double tilde_L_double_star(double L1, const ReactionPair& p) {
    if (!(L1 > 0)) throw UsageError("tilde_L_double_star: L1 must be positive");
    const double s = std::sqrt(-p.gp0);
    const double arg = std::sqrt(-p.gp0 / p.fp0) * std::tanh(s * L1);
    return (std::atan(arg) + std::acos(-1.0) / 2.0) / std::sqrt(p.fp0);
}

namespace {

// Discrete smallest eigenvalue on [0,R], Neumann left / Dirichlet right,
// with the potential averaged over dual cells (keeps the interface error at
// O(dx^2) so Richardson on dx^2 stays valid).
double lambda1_grid(const ZoneLayout& layout, double R, const ReactionPair& p, int n) {
    const double dx = R / n;
    const double vf = -p.fp0, vg = -p.gp0;
    std::vector<double> d(n), e(n - 1, -1.0 / (dx * dx));
    e[0] = -std::sqrt(2.0) / (dx * dx);  // similarity-symmetrised Neumann row
    for (int i = 0; i < n; ++i) {
        const double lo = std::max(0.0, (i - 0.5) * dx);
        const double hi = std::min(R, (i + 0.5) * dx);
        const double zone = std::max(0.0, std::min(hi, layout.L2) - std::max(lo, layout.L1));
        const double vbar = (vf * zone + vg * ((hi - lo) - zone)) / (hi - lo);
        d[i] = 2.0 / (dx * dx) + vbar;
    }
    return num::smallest_eig_tridiagonal(d, e);
}

}  // namespace

double lambda1_finite(const ZoneLayout& layout, double R, const ReactionPair& p) {
    if (!(R > 0)) throw UsageError("lambda1_finite: R must be positive");
    int n = 4096;
    double coarse = lambda1_grid(layout, R, p, n);
    double fine = lambda1_grid(layout, R, p, 2 * n);
    double rich = (4.0 * fine - coarse) / 3.0;
    for (int pass = 0; pass < 2; ++pass) {
        n *= 2;
        coarse = fine;
        fine = lambda1_grid(layout, R, p, 2 * n);
        const double next = (4.0 * fine - coarse) / 3.0;
        if (std::abs(next - rich) < 1e-8) return next;
        rich = next;
    }
    return rich;
}

double infinite_domain_radius(const ReactionPair& p) {
    return 40.0 * std::max(1.0, 1.0 / std::sqrt(-p.gp0));
}

double R_star(const ZoneLayout& layout, const ReactionPair& p) {
    const double L = layout.length();
    const double Lcrit = (layout.kind == ZoneLayout::Kind::Connected)
                             ? L_star(p)
                             : tilde_L_star(layout.L1, p);
    if (L <= Lcrit) return kInf;

    // lambda1^R > 0 for small R, < 0 for large R; bracket then bisect.
    double lo = 0.25 * std::min(1.0, L);
    while (lambda1_finite(layout, lo, p) <= 0) lo *= 0.5;
    double hi = std::max(2.0, layout.right_edge() + 1.0);
    while (lambda1_finite(layout, hi, p) > 0) {
        hi *= 2.0;
        if (hi > 512.0) return kInf;  // indistinguishable from L <= L_* at working precision
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (lambda1_finite(layout, mid, p) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double h_star(const ZoneLayout& layout, const ReactionPair& p) {
    const double Lcrit = (layout.kind == ZoneLayout::Kind::Connected)
                             ? L_star(p)
                             : tilde_L_star(layout.L1, p);
    if (layout.length() <= Lcrit) return kInf;
    return R_star(layout, p);
}

SpectralReport spectral_report(const ReactionPair& pair, const std::vector<double>& Ls,
                               std::optional<double> L1) {
    SpectralReport rep;
    rep.theta_star = pair.theta_star;
    rep.L_star = L_star(pair);
    rep.L_dstar = L_double_star(pair);
    for (double L : Ls) {
        SpectralCriticalRow row;
        row.L = L;
        row.lambda1 = lambda1_connected(L, pair);
        const auto layout = ZoneLayout::connected(L);
        row.h_star = h_star(layout, pair);
        row.R_star = (L > rep.L_star) ? row.h_star : kInf;
        rep.rows.push_back(row);
    }
    if (L1) {
        rep.L1 = *L1;
        rep.tilde_L_star = tilde_L_star(*L1, pair);
        rep.tilde_L_dstar = tilde_L_double_star(*L1, pair);
        std::vector<SpectralCriticalRow> trows;
        for (double L : Ls) {
            SpectralCriticalRow row;
            row.L = L;
            row.lambda1 = lambda1_separated(*L1, L, pair);
            const auto layout = ZoneLayout::separated(*L1, *L1 + L);
            row.h_star = h_star(layout, pair);
            row.R_star = (L > *rep.tilde_L_star) ? row.h_star : kInf;
            trows.push_back(row);
        }
        rep.tilde_rows = std::move(trows);
    }
    return rep;
}

}  // namespace fbrd
