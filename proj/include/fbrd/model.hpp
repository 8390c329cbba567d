#pragma once

#include <string>
#include <vector>

#include "fbrd/numerics.hpp"

namespace fbrd {

// Monostable/bistable nonlinearity pair. f drives growth inside the
// protection zone, g (strong Allee effect) outside. Immutable after
// construction; safe to share across threads.
struct ReactionPair {
    num::Fn1 f, g;
    double fp0 = 0;         // f'(0) > 0
    double gp0 = 0;         // g'(0) < 0
    double fp1 = 0;         // f'(1) < 0
    double gp1 = 0;         // g'(1) < 0
    double theta = 0;       // interior zero of g in (0,1)
    double theta_star = 0;  // zero of \int_0^a g in (theta,1)
    double lip_f = 0, lip_g = 0;
    std::string name;
    // Ascending coefficients when the pair is polynomial (empty for general
    // callables); lets hot loops evaluate by Horner instead of through
    // std::function.
    std::vector<double> f_poly, g_poly;

    // Antiderivatives from 0, by adaptive Simpson (abs tol 1e-12).
    double F(double v) const;
    double G(double v) const;
};

// f(u) = u(1-u), g(u) = u(u-theta)(1-u). Requires theta in (0, 1/2) so the
// area condition int_0^1 g > 0 holds.
ReactionPair make_cubic_pair(double theta);

// Polynomial pair from ascending coefficient lists (c0 + c1 u + c2 u^2 + ...).
// theta is located as the sign change of g inside (0,1).
ReactionPair make_poly_pair(const std::vector<double>& f_coeffs,
                            const std::vector<double>& g_coeffs);

// \int_0^a g = 0 with a in (theta, 1), |G(a)| <= 1e-10. Throws
// ValidationError when the root is not bracketed (invalid pair).
double theta_star(const ReactionPair& pair);

struct HypothesisCheck {
    std::string name;
    bool pass = true;
    double where = 0;  // first violating sample point, if any
    std::string detail;
};

struct ValidationReport {
    bool all_pass = true;
    std::vector<HypothesisCheck> checks;
};

// Dense-sampling check of the standing hypotheses on [0,2] plus the two
// integral conditions. Never mutates the pair. n_samples >= 100.
ValidationReport validate(const ReactionPair& pair, int n_samples = 10000);

// Protection zone geometry. Connected: [0, L]. Separated: [L1, L2] with
// L1 > 0. length() is the zone length L2 - L1 in both cases.
struct ZoneLayout {
    enum class Kind { Connected, Separated };
    Kind kind = Kind::Connected;
    double L1 = 0, L2 = 0;

    double length() const { return L2 - L1; }
    double right_edge() const { return L2; }
    bool in_zone(double x) const { return x >= L1 && x <= L2; }

    static ZoneLayout connected(double L);
    static ZoneLayout separated(double L1, double L2);
};

// Initial profile phi on [0, h0] (class X(h0): phi'(0)=0, phi(h0)=0, phi>0
// inside), stored as samples, plus the amplitude multiplier sigma.
struct InitialData {
    double h0 = 0;
    double sigma = 1.0;
    std::vector<double> xs, phi;

    double eval(double x) const;

    static InitialData cosine(double h0, double sigma = 1.0, int n = 1025);
    static InitialData sampled(std::vector<double> xs, std::vector<double> phi, double sigma);
};

}  // namespace fbrd
