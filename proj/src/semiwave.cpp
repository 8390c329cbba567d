#include "fbrd/semiwave.hpp"

#include <algorithm>
#include <cmath>

namespace fbrd {

namespace {

using num::integrate_ode;
using num::OdeEvent;
using num::State;

enum class ShotKind { Overshoot, Undershoot };

struct Shot {
    ShotKind kind;
    double p0 = 0;                 // p at the q = 0 crossing (overshoot only)
    num::OdeSolution<2> sol;
};

// Integrate the stable manifold of the saddle (1,0) backward in z
// (parameterised by s = -z). Start offset 1e-8 along the stable eigenvector.
Shot shoot(double c, const ReactionPair& pair, bool keep_orbit) {
    const double nu_minus = 0.5 * (c - std::sqrt(c * c - 4.0 * pair.gp1));  // < 0
    const double eps = 1e-8;
    State<2> y0{1.0 - eps, -nu_minus * eps};

    num::OdeRhs<2> rhs = [&pair, c](double, const State<2>& y, State<2>& dy) {
        dy[0] = -y[1];
        dy[1] = -(c * y[1] - pair.g(y[0]));
    };
    std::vector<OdeEvent<2>> events;
    events.push_back({[](double, const State<2>& y) { return y[0]; }, -1});  // q = 0
    events.push_back({[](double, const State<2>& y) { return y[1]; }, -1});  // p = 0 (turning)

    num::OdeOptions opt;
    opt.max_steps = 4'000'000;
    auto sol = integrate_ode<2>(rhs, 0.0, y0, 1e5, events, opt);
    Shot s{ShotKind::Undershoot, 0.0, {}};
    if (sol.event_index == 0) {
        s.kind = ShotKind::Overshoot;
        s.p0 = sol.event_y[1];
    }
    if (keep_orbit) s.sol = std::move(sol);
    return s;
}

}  // namespace

double wave_speed_c0(const ReactionPair& pair) {
    // c = 0 conserves energy, so the orbit reaches q = 0 with p^2/2 = G(1) > 0.
    if (!(pair.G(1.0) > 0))
        throw ValidationError("wave_speed_c0: int_0^1 g must be positive (unbalanced bistable)");
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 60 && shoot(hi, pair, false).kind == ShotKind::Overshoot; ++i) hi *= 2.0;
    if (shoot(hi, pair, false).kind == ShotKind::Overshoot)
        throw NumericalError("wave_speed_c0: failed to bracket the wave speed");
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (shoot(mid, pair, false).kind == ShotKind::Overshoot)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double semiwave_slope_at_front(double c, const ReactionPair& pair) {
    const auto s = shoot(c, pair, false);
    if (s.kind != ShotKind::Overshoot)
        throw UsageError("semiwave_slope_at_front: c must lie below the wave speed c0");
    return s.p0;
}

SemiWave semi_wave(double mu, const ReactionPair& pair) {
    if (!(mu > 0)) throw UsageError("semi_wave: mu must be positive");
    SemiWave sw;
    sw.mu = mu;
    sw.c0 = wave_speed_c0(pair);

    // mu p0(c) - c is positive near c = 0 and negative near c0 (p0 -> 0).
    double lo = 0.0, hi = sw.c0 * (1.0 - 1e-12);
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        const auto s = shoot(mid, pair, false);
        if (s.kind != ShotKind::Overshoot) {
            hi = mid;  // at or beyond c0
            continue;
        }
        if (mu * s.p0 - mid > 0)
            lo = mid;
        else
            hi = mid;
    }
    sw.c_star = 0.5 * (lo + hi);

    auto s = shoot(sw.c_star, pair, true);
    if (s.kind != ShotKind::Overshoot)
        throw NumericalError("semi_wave: converged c* did not produce a front crossing");
    sw.qprime0 = s.p0;
    sw.residual = std::abs(mu * sw.qprime0 - sw.c_star);

    // Orbit was built backward from q ~ 1 to q = 0 in s = -z; flip it into
    // z-coordinates and resample onto a uniform grid.
    const double z_max = s.sol.xs.back();
    std::vector<double> zs, qs, ps;
    zs.reserve(s.sol.xs.size());
    for (std::size_t i = s.sol.xs.size(); i-- > 0;) {
        zs.push_back(z_max - s.sol.xs[i]);
        qs.push_back(s.sol.ys[i][0]);
        ps.push_back(s.sol.ys[i][1]);
    }
    const int n = 4096;
    sw.profile.xs.resize(n + 1);
    sw.profile.us.resize(n + 1);
    sw.profile.dus.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double z = z_max * i / n;
        sw.profile.xs[i] = z;
        sw.profile.us[i] = std::clamp(num::interp_linear(zs, qs, z), 0.0, 1.0);
        sw.profile.dus[i] = num::interp_linear(zs, ps, z);
    }
    sw.profile.us.front() = 0.0;
    sw.profile.dus.front() = sw.qprime0;
    return sw;
}

}  // namespace fbrd
