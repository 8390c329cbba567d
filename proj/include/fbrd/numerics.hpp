#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "fbrd/errors.hpp"

namespace fbrd::num {

using Fn1 = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

// Adaptive Simpson with absolute tolerance. Exact for cubics, so the built-in
// polynomial nonlinearities integrate at machine precision in one level.
double adaptive_simpson(const Fn1& f, double a, double b, double abs_tol = 1e-12);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

// Plain bisection on a sign change. Returns the bracket midpoint once the
// bracket width falls below xtol.
double bisect(const Fn1& f, double lo, double hi, double xtol, int max_iter = 200);

// Brent's method (inverse quadratic + secant + bisection fallback).
double brent(const Fn1& f, double lo, double hi, double xtol = 1e-14, int max_iter = 200);

// ---------------------------------------------------------------------------
// Linear algebra helpers
// ---------------------------------------------------------------------------

// Thomas algorithm. lower[i] multiplies x[i-1] in row i (lower[0] unused),
// upper[i] multiplies x[i+1] (upper[n-1] unused). rhs is overwritten with the
// solution. diag/rhs are modified in place.
void solve_tridiagonal(std::span<double> lower, std::span<double> diag,
                       std::span<double> upper, std::span<double> rhs);

// Smallest eigenvalue of a symmetric tridiagonal matrix (diag d, off-diag e)
// by inverse power iteration with a Gershgorin shift, switching to Rayleigh
// quotient shifts once roughly converged. Throws NumericalError if the
// iteration stalls even after a retry with a perturbed shift.
double smallest_eig_tridiagonal(const std::vector<double>& d, const std::vector<double>& e);

// Least-squares slope of ys against xs over [i0, i1).
double least_squares_slope(std::span<const double> xs, std::span<const double> ys,
                           std::size_t i0, std::size_t i1);

// Linear interpolation on a sorted abscissa grid; clamps outside the range.
double interp_linear(std::span<const double> xs, std::span<const double> ys, double x);

// ---------------------------------------------------------------------------
// Embedded Runge-Kutta 5(4) (Dormand-Prince) with event detection
// ---------------------------------------------------------------------------

template <int N>
using State = std::array<double, N>;

template <int N>
using OdeRhs = std::function<void(double, const State<N>&, State<N>&)>;

// Event fires on a sign change of fn along the solution. direction < 0 means
// only +..- crossings count, > 0 only -..+, 0 either. All events terminate
// the integration; the first one hit (in x) wins.
template <int N>
struct OdeEvent {
    std::function<double(double, const State<N>&)> fn;
    int direction = 0;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-4;
    double h_max = std::numeric_limits<double>::infinity();
    long max_steps = 2'000'000;
};

template <int N>
struct OdeSolution {
    std::vector<double> xs;            // accepted step endpoints (includes x0)
    std::vector<State<N>> ys;
    int event_index = -1;              // -1: integrated to x_end without event
    double event_x = std::numeric_limits<double>::quiet_NaN();
    State<N> event_y{};
    bool reached_end = false;
};

namespace detail {

// Dormand-Prince tableau.
inline constexpr double DP_C[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double DP_A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
inline constexpr double DP_B4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

template <int N>
struct DpStepper {
    const OdeRhs<N>& rhs;
    OdeOptions opt;
    std::array<State<N>, 7> k;

    // One accepted adaptive step from (x, y, f=rhs(x,y)). On return y/f/x are
    // advanced and h holds the proposed next step size. Returns false if the
    // step size underflowed.
    bool step(double& x, State<N>& y, State<N>& f, double& h, double x_end) {
        for (int attempt = 0; attempt < 60; ++attempt) {
            const double hs = std::min({h, opt.h_max, x_end - x});
            k[0] = f;
            State<N> yt{};
            for (int s = 1; s < 7; ++s) {
                for (int i = 0; i < N; ++i) {
                    double acc = 0;
                    for (int j = 0; j < s; ++j) acc += DP_A[s][j] * k[j][i];
                    yt[i] = y[i] + hs * acc;
                }
                rhs.operator()(x + DP_C[s] * hs, yt, k[s]);
            }
            // k[6] is rhs at the 5th-order solution (FSAL); yt currently holds it.
            double err = 0;
            for (int i = 0; i < N; ++i) {
                double e4 = 0;
                for (int j = 0; j < 7; ++j) e4 += DP_B4[j] * k[j][i];
                const double e = yt[i] - (y[i] + hs * e4);
                const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(yt[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / N);
            if (err <= 1.0 || hs <= 16 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
                x += hs;
                y = yt;
                f = k[6];
                const double fac = (err > 0) ? 0.9 * std::pow(err, -0.2) : 5.0;
                h = hs * std::clamp(fac, 0.2, 5.0);
                return true;
            }
            h = hs * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (h < 1e-14 * std::max(1.0, std::abs(x))) return false;
        }
        return false;
    }
};

}  // namespace detail

// Integrate y' = rhs(x,y) from x0 to x_end (x_end > x0), stopping at the first
// event crossing. Events are located by bisection re-integrating from the
// start of the bracketing step, so event_x / event_y carry the integration
// accuracy rather than interpolation accuracy.
template <int N>
OdeSolution<N> integrate_ode(const OdeRhs<N>& rhs, double x0, State<N> y0, double x_end,
                             const std::vector<OdeEvent<N>>& events = {},
                             const OdeOptions& opt = {}) {
    OdeSolution<N> sol;
    detail::DpStepper<N> stepper{rhs, opt, {}};

    double x = x0;
    State<N> y = y0;
    State<N> f{};
    rhs(x, y, f);
    double h = opt.h_init;

    sol.xs.push_back(x);
    sol.ys.push_back(y);

    std::vector<double> ev_prev(events.size());
    for (std::size_t m = 0; m < events.size(); ++m) ev_prev[m] = events[m].fn(x, y);

    // Re-integrates from (xs, ys) to xt with tight tolerance; used for event
    // localisation inside one accepted step.
    auto reintegrate = [&](double xs_, const State<N>& ys_, double xt) {
        if (xt <= xs_) return ys_;
        detail::DpStepper<N> sub{rhs, opt, {}};
        double xx = xs_;
        State<N> yy = ys_;
        State<N> ff{};
        rhs(xx, yy, ff);
        double hh = std::max(1e-8, (xt - xs_) / 8);
        while (xx < xt - 1e-15 * std::max(1.0, std::abs(xt))) {
            if (!sub.step(xx, yy, ff, hh, xt))
                throw NumericalError("ode: event re-integration step underflow");
        }
        return yy;
    };

    for (long n = 0; n < opt.max_steps && x < x_end; ++n) {
        const double x_prev = x;
        const State<N> y_prev = y;
        if (!stepper.step(x, y, f, h, x_end))
            throw NumericalError("ode: step size underflow at x=" + std::to_string(x));

        // Event check on the accepted step.
        int hit = -1;
        double lo = x_prev, hi = x;
        for (std::size_t m = 0; m < events.size(); ++m) {
            const double e1 = events[m].fn(x, y);
            const double e0 = ev_prev[m];
            const bool crossed = (e0 > 0 && e1 <= 0 && events[m].direction <= 0) ||
                                 (e0 < 0 && e1 >= 0 && events[m].direction >= 0);
            ev_prev[m] = e1;
            if (!crossed) continue;
            // Bisection on the re-integrated solution.
            double a = x_prev, b = x, ea = e0;
            for (int it = 0; it < 80 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
                const double mid = 0.5 * (a + b);
                const double em = events[m].fn(mid, reintegrate(x_prev, y_prev, mid));
                if ((ea > 0) == (em > 0))
                    a = mid, ea = em;
                else
                    b = mid;
            }
            const double xe = 0.5 * (a + b);
            if (hit < 0 || xe < sol.event_x) {
                hit = static_cast<int>(m);
                sol.event_x = xe;
                sol.event_y = reintegrate(x_prev, y_prev, xe);
            }
            lo = a, hi = b;
        }
        (void)lo;
        (void)hi;
        if (hit >= 0) {
            sol.event_index = hit;
            sol.xs.push_back(sol.event_x);
            sol.ys.push_back(sol.event_y);
            return sol;
        }

        sol.xs.push_back(x);
        sol.ys.push_back(y);
    }
    sol.reached_end = (x >= x_end - 1e-12 * std::max(1.0, std::abs(x_end)));
    if (!sol.reached_end)
        throw NumericalError("ode: max_steps exhausted before x_end or an event");
    return sol;
}

}  // namespace fbrd::num
