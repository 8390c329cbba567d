#pragma once

#include "fbrd/phaseplane.hpp"

namespace fbrd {

// Semi-wave pair (c*, q_{c*}) for the Stefan front law with coefficient mu:
// q'' - c q' + g(q) = 0, q(0) = 0, q(inf) = 1, mu q'(0) = c.
struct SemiWave {
    double mu = 0;
    double c0 = 0;        // bistable traveling-wave speed of u_t = u_xx + g(u)
    double c_star = 0;    // semi-wave speed, 0 < c* < c0
    double qprime0 = 0;   // q_{c*}'(0)
    double residual = 0;  // |mu q'(0) - c*|
    Profile profile;      // q_{c*} on [0, Z_max], uniform grid, q(Z_max) ~ 1
};

// Bistable wave speed by phase-plane shooting: integrate the stable manifold
// of (q,p) = (1,0) backward; undershoot (p -> 0 with q interior) means c too
// large, overshoot (q reaches 0 with p > 0) means c too small. Bisection to
// 1e-10 in c.
double wave_speed_c0(const ReactionPair& pair);

// q'(0) of the semi-wave profile q_c for c in [0, c0); decreasing in c.
double semiwave_slope_at_front(double c, const ReactionPair& pair);

// Solve mu q_c'(0) = c for c in (0, c0) and assemble the profile.
SemiWave semi_wave(double mu, const ReactionPair& pair);

}  // namespace fbrd
