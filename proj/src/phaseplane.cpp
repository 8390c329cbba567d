#include "fbrd/phaseplane.hpp"

#include <algorithm>
#include <cmath>

namespace fbrd {

namespace {

using num::integrate_ode;
using num::OdeEvent;
using num::OdeOptions;
using num::State;

Profile to_profile(const std::vector<double>& xs, const std::vector<State<2>>& ys) {
    Profile p;
    p.xs = xs;
    p.us.reserve(ys.size());
    p.dus.reserve(ys.size());
    for (const auto& y : ys) {
        p.us.push_back(y[0]);
        p.dus.push_back(y[1]);
    }
    return p;
}

Profile to_profile3(const std::vector<double>& xs, const std::vector<State<3>>& ys) {
    Profile p;
    p.xs = xs;
    p.us.reserve(ys.size());
    p.dus.reserve(ys.size());
    for (const auto& y : ys) {
        p.us.push_back(y[0]);
        p.dus.push_back(y[1]);
    }
    return p;
}

}  // namespace

namespace {

// Follow the decaying zero-g-energy branch from (v0, p_proj(v0)) down to
// v_target. The homoclinic orbit is unstable to energy drift (any energy
// error kicks it onto a nearby periodic orbit before v reaches the target),
// so the momentum is re-projected onto p = -sqrt(-2 G(v)) at segment
// boundaries; segments halve v each time.
void descend_zero_energy(Profile& prof, double x0, double v0, double v_target,
                         const ReactionPair& pair) {
    num::OdeRhs<2> rhs = [&pair](double, const State<2>& y, State<2>& dy) {
        dy[0] = y[1];
        dy[1] = -pair.g(y[0]);
    };
    double x = x0, v = v0;
    while (v > v_target * (1.0 + 1e-12)) {
        const double p = -std::sqrt(std::max(0.0, -2.0 * pair.G(v)));
        const double target = std::max(v_target, 0.5 * v);
        std::vector<OdeEvent<2>> events;
        events.push_back({[target](double, const State<2>& y) { return y[0] - target; }, -1});
        auto seg = integrate_ode<2>(rhs, x, {v, p}, x + 1e4, events, {});
        if (seg.event_index != 0)
            throw NumericalError("descend_zero_energy: decay segment missed its target");
        for (std::size_t i = 1; i < seg.xs.size(); ++i) {
            prof.xs.push_back(seg.xs[i]);
            prof.us.push_back(seg.ys[i][0]);
            prof.dus.push_back(seg.ys[i][1]);
        }
        x = seg.event_x;
        v = seg.event_y[0];
    }
}

}  // namespace

Profile ground_state_V(const ReactionPair& pair) {
    const double ths = pair.theta_star;
    num::OdeRhs<2> rhs = [&pair](double, const State<2>& y, State<2>& dy) {
        dy[0] = y[1];
        dy[1] = -pair.g(y[0]);
    };
    // Leave the (degenerate-speed) peak by direct integration, then descend
    // the projected zero-energy branch to the 1e-8 decay target.
    std::vector<OdeEvent<2>> events;
    events.push_back({[ths](double, const State<2>& y) { return y[0] - 0.5 * ths; }, -1});
    events.push_back({[ths](double, const State<2>& y) { return ths + 1e-9 - y[0]; }, -1});
    auto sol = integrate_ode<2>(rhs, 0.0, {ths, 0.0}, 1e4, events, {});
    if (sol.event_index != 0)
        throw NumericalError("ground_state_V: orbit left the (0, theta*] band (bad theta*?)");
    Profile prof = to_profile(sol.xs, sol.ys);
    descend_zero_energy(prof, sol.event_x, sol.event_y[0], 1e-8, pair);
    return prof;
}

double bump_halfwidth_quadrature(double alpha, const ReactionPair& pair) {
    if (!(alpha > pair.theta_star && alpha <= 1.0))
        throw UsageError("bump: alpha must lie in (theta*, 1]");
    if (alpha > 1.0 - 1e-12) return std::numeric_limits<double>::infinity();  // g(1) = 0
    const double Ga = pair.G(alpha);
    // Taylor data for the de-singularised integrand near w = 0.
    const double ga = pair.g(alpha);
    const double dga = (pair.g(alpha + 1e-6) - pair.g(alpha - 1e-6)) / 2e-6;
    const double d2ga = (pair.g(alpha + 1e-4) - 2.0 * ga + pair.g(alpha - 1e-4)) / 1e-8;
    // l = int_0^alpha ds / sqrt(2(G(alpha)-G(s))); s = alpha - w^2 removes the
    // 1/sqrt singularity at s = alpha. For small w the bracket
    // G(alpha)-G(alpha-w^2) = w^2 g - w^4 g'/2 + w^6 g''/6 + ... is evaluated
    // by its series; the direct difference is pure cancellation there.
    auto integrand = [&](double w) {
        const double w2 = w * w;
        if (w2 < 1e-4) {
            const double bracket = ga - 0.5 * w2 * dga + w2 * w2 * d2ga / 6.0;
            return (bracket > 0) ? 2.0 / std::sqrt(2.0 * bracket) : 0.0;
        }
        const double val = 2.0 * (Ga - pair.G(alpha - w2));
        return (val > 0) ? 2.0 * w / std::sqrt(val) : 0.0;
    };
    return num::adaptive_simpson(integrand, 0.0, std::sqrt(alpha), 1e-10);
}

BumpSolution bump_solution(double alpha, const ReactionPair& pair) {
    if (!(alpha > pair.theta_star && alpha <= 1.0))
        throw UsageError("bump: alpha must lie in (theta*, 1]");
    if (alpha > 1.0 - 1e-12)
        throw NumericalError("bump: no compact bump at alpha = 1 (half-width diverges)");
    const double Ga = pair.G(alpha);
    if (!(Ga > 0)) throw NumericalError("bump: G(alpha) must be positive");

    num::OdeRhs<2> rhs = [&pair](double, const State<2>& y, State<2>& dy) {
        dy[0] = y[1];
        dy[1] = -pair.g(y[0]);
    };
    // Rise from (0, sqrt(2 G(alpha))) to the turning point v' = 0.
    std::vector<OdeEvent<2>> events;
    events.push_back({[](double, const State<2>& y) { return y[1]; }, -1});
    auto sol = integrate_ode<2>(rhs, 0.0, {0.0, std::sqrt(2.0 * Ga)}, 1e5, events, {});
    if (sol.event_index != 0) throw NumericalError("bump: no turning point found");

    BumpSolution b;
    b.alpha = alpha;
    b.half_width = sol.event_x;
    // Mirror the rising half around l_alpha.
    Profile& prof = b.profile;
    prof.xs = sol.xs;
    for (const auto& y : sol.ys) {
        prof.us.push_back(y[0]);
        prof.dus.push_back(y[1]);
    }
    for (std::size_t i = sol.xs.size() - 1; i-- > 0;) {
        prof.xs.push_back(2.0 * b.half_width - sol.xs[i]);
        prof.us.push_back(sol.ys[i][0]);
        prof.dus.push_back(-sol.ys[i][1]);
    }
    return b;
}

double zone_exit_length(double a, const ReactionPair& pair) {
    if (!(a > 0 && a < pair.theta_star))
        throw UsageError("zone_exit_length: a must lie in (0, theta*)");
    // State (U, U', E_g); E_g' = U'(g - f)(U) keeps the g-energy along the
    // f-orbit without quadrature in the inner loop.
    num::OdeRhs<3> rhs = [&pair](double, const State<3>& y, State<3>& dy) {
        dy[0] = y[1];
        dy[1] = -pair.f(y[0]);
        dy[2] = y[1] * (pair.g(y[0]) - pair.f(y[0]));
    };
    std::vector<OdeEvent<3>> events;
    events.push_back({[](double, const State<3>& y) { return y[2]; }, 1});   // E_g hits 0
    events.push_back({[](double, const State<3>& y) { return y[0]; }, -1});  // U hit 0 first
    auto sol = integrate_ode<3>(rhs, 0.0, {a, 0.0, pair.G(a)}, 1e4, events, {});
    if (sol.event_index != 0)
        throw NumericalError("zone_exit_length: g-energy did not cross zero before U vanished");
    return sol.event_x;
}

namespace {

// Continue a matched state at x0 with the g-dynamics until decay below 1e-8.
// The match put (U, U') on the zero-g-energy level (within the matching
// residual), i.e. on the shifted ground-state tail V(. - z); the descent
// helper tracks that branch stably.
void append_g_tail(Profile& prof, double x0, double u0, const ReactionPair& pair) {
    descend_zero_energy(prof, x0, u0, 1e-8, pair);
}

}  // namespace

GroundStateResult ground_state_connected(double L, const ReactionPair& pair, int scan_points) {
    if (!(L > 0)) throw UsageError("ground_state_connected: L must be positive");
    GroundStateResult res;
    res.L = L;

    const double ths = pair.theta_star;
    const int n = std::max(scan_points, 16);
    double prev_a = 0, prev_d = 0;
    bool have_prev = false;
    for (int i = 1; i <= n; ++i) {
        const double a = ths * i / (n + 1);
        const double d = zone_exit_length(a, pair) - L;
        if (have_prev && ((prev_d <= 0 && d >= 0) || (prev_d >= 0 && d <= 0))) {
            const double a_root = num::brent(
                [&](double aa) { return zone_exit_length(aa, pair) - L; }, prev_a, a, 1e-13);
            if (std::abs(zone_exit_length(a_root, pair) - L) <= 1e-6) {
                res.exists = true;
                res.a = a_root;
                break;
            }
        }
        prev_a = a;
        prev_d = d;
        have_prev = true;
    }
    if (!res.exists) return res;

    // Assemble the profile: f-orbit on [0, L], then the decaying g-tail.
    num::OdeRhs<3> rhs = [&pair](double, const State<3>& y, State<3>& dy) {
        dy[0] = y[1];
        dy[1] = -pair.f(y[0]);
        dy[2] = y[1] * (pair.g(y[0]) - pair.f(y[0]));
    };
    auto sol = integrate_ode<3>(rhs, 0.0, {res.a, 0.0, pair.G(res.a)},
                                zone_exit_length(res.a, pair), {}, {});
    res.profile = to_profile3(sol.xs, sol.ys);
    append_g_tail(res.profile, sol.xs.back(), sol.ys.back()[0], pair);
    return res;
}

double L_star_upper(const ReactionPair& pair, int scan_points) {
    const double ths = pair.theta_star;
    const int n = std::max(scan_points, 16);
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = ths * (i + 1) / (n + 1);

    int best = 0;
    double best_L = -1;
    for (int i = 0; i < n; ++i) {
        const double La = zone_exit_length(grid[i], pair);
        if (La > best_L) {
            best_L = La;
            best = i;
        }
    }
    // Golden-section refinement between the grid neighbours of the maximum.
    // The supremum may sit on the a -> 0 boundary (where L(a) -> L_*), so the
    // left clamp stays a little above the energy-resolution floor.
    const double a_floor = std::max(1e-5, 1e-7 * ths);
    double lo = (best > 0) ? grid[best - 1] : a_floor;
    double hi = (best + 1 < n) ? grid[best + 1] : ths * (1 - 1e-9);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = zone_exit_length(x1, pair), f2 = zone_exit_length(x2, pair);
    for (int it = 0; it < 80 && (hi - lo) > 1e-10; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = zone_exit_length(x1, pair);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = zone_exit_length(x2, pair);
        }
    }
    return std::max(best_L, std::max(f1, f2));
}

}  // namespace fbrd
