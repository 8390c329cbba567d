#pragma once

#include "fbrd/model.hpp"

namespace fbrd {

// Sampled 1-D profile. xs strictly increasing, us finite. Phase-plane
// constructions also record the derivative samples dus (empty otherwise).
struct Profile {
    std::vector<double> xs, us;
    std::vector<double> dus;

    double eval(double x) const { return num::interp_linear(xs, us, x); }
    std::size_t size() const { return xs.size(); }
};

// Ground state V of V'' + g(V) = 0, V(0) = theta*, V'(0) = 0, on [0, X] with
// X the point where V has decayed below 1e-8. The orbit sits on the zero
// g-energy level: |V'^2/2 + G(V)| stays below 1e-9.
Profile ground_state_V(const ReactionPair& pair);

struct BumpSolution {
    double alpha = 0;
    double half_width = 0;  // l_alpha from the integrated orbit
    Profile profile;        // v_alpha on [0, 2 l_alpha]
};

// Compact bump v_alpha of v'' + g(v) = 0 with peak alpha in (theta*, 1).
// (l_alpha diverges logarithmically at both ends of that interval.)
BumpSolution bump_solution(double alpha, const ReactionPair& pair);

// Independent route to l_alpha: the quadrature (with the inverse-square-root
// endpoint singularity removed by s = alpha - w^2).
double bump_halfwidth_quadrature(double alpha, const ReactionPair& pair);

// Zone-exit length L(a): integrate U'' = -f(U) from (a, 0) and report the x
// where the g-energy U'^2/2 + G(U) crosses zero. Defined for a in (0, theta*).
double zone_exit_length(double a, const ReactionPair& pair);

struct GroundStateResult {
    bool exists = false;
    double a = 0;   // U(0) in (0, theta*)
    double L = 0;
    Profile profile;
};

// Ground state of the connected stationary problem at zone length L: find
// a with L(a) = L (within 1e-6) over an a-scan with secant refinement, then
// assemble the profile (f-orbit on [0,L], g-decay beyond).
GroundStateResult ground_state_connected(double L, const ReactionPair& pair,
                                         int scan_points = 2048);

// L-star-upper: sup of L(a) over the a-scan, golden-section refined near the
// maximum. Finite; accuracy ~1e-4.
double L_star_upper(const ReactionPair& pair, int scan_points = 2048);

}  // namespace fbrd
