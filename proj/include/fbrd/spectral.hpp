#pragma once

#include <optional>
#include <vector>

#include "fbrd/model.hpp"

namespace fbrd {

// Principal eigenvalues of the linearised-at-zero operator with piecewise
// constant potential (-f'(0) in the zone, -g'(0) outside), and the critical
// lengths/radii they induce. All operations are pure.

// Right-hand side of the half-line dispersion relation: the zone length L
// that makes lambda the principal eigenvalue. Defined for
// lambda in (-f'(0), -g'(0)); strictly decreasing in lambda.
double connected_length_of_lambda(double lambda, const ReactionPair& pair);
double separated_length_of_lambda(double lambda, double L1, const ReactionPair& pair);

// lambda_1(L) of the connected half-line problem, inverted from the
// dispersion relation by bisection; |L(lambda) - L| <= 1e-10.
double lambda1_connected(double L, const ReactionPair& pair);

// Separated analogue lambda~_1(L) for a zone [L1, L1+L].
double lambda1_separated(double L1, double L, const ReactionPair& pair);

// Closed forms: L_* = arctan(sqrt(-g'(0)/f'(0)))/sqrt(f'(0)),
// L_** = pi/(2 sqrt(f'(0))), and their separated-zone analogues.
double L_star(const ReactionPair& pair);
double L_double_star(const ReactionPair& pair);
double tilde_L_star(double L1, const ReactionPair& pair);
double tilde_L_double_star(double L1, const ReactionPair& pair);

// Matrix oracle: smallest eigenvalue of -phi'' + V(x) phi on [0,R] with
// phi'(0)=0, phi(R)=0, V = -f'(0) on the zone and -g'(0) elsewhere.
// Second-order centred Laplacian with cell-averaged potential, refined with
// Richardson extrapolation until successive estimates differ by < 1e-8.
double lambda1_finite(const ZoneLayout& layout, double R, const ReactionPair& pair);

// Truncation radius standing in for R -> infinity (eigenfunction decays like
// exp(-sqrt(-g'(0)-lambda) x), so the tail error is far below 1e-8 here).
double infinite_domain_radius(const ReactionPair& pair);

// Critical radius: the zero of R -> lambda1_finite(layout, R). Returns
// +infinity when the zone is too short (L <= L_* resp. L <= L~_*).
double R_star(const ZoneLayout& layout, const ReactionPair& pair);

// h^* = +infinity when L <= L_* (0 <= L), else R_star.
double h_star(const ZoneLayout& layout, const ReactionPair& pair);

struct SpectralCriticalRow {
    double L = 0;
    double lambda1 = 0;
    double R_star = 0;  // +inf encoded as infinity()
    double h_star = 0;
};

struct SpectralReport {
    double theta_star = 0;
    double L_star = 0;
    double L_dstar = 0;
    std::vector<SpectralCriticalRow> rows;
    // Separated-zone analogues, present when an L1 was supplied.
    std::optional<double> L1;
    std::optional<double> tilde_L_star;
    std::optional<double> tilde_L_dstar;
    std::optional<std::vector<SpectralCriticalRow>> tilde_rows;
};

SpectralReport spectral_report(const ReactionPair& pair, const std::vector<double>& Ls,
                               std::optional<double> L1 = std::nullopt);

}  // namespace fbrd
