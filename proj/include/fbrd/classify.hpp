#pragma once

#include "fbrd/pde.hpp"

namespace fbrd {

enum class OutcomeKind { Vanishing, Spreading, Transition, Undetermined };

const char* to_string(OutcomeKind k);

struct ClassifierTolerances {
    double t_min = 50;            // minimum covered time unless an early criterion fires
    double eps_vanish = 1e-3;     // sup u below this counts as extinct
    double delta_spread = 0.02;   // bump margin above theta*
    double eps_transition = 0.05; // max distance to a ground state
    double dh_plateau = 1e-4;     // front movement below this over the trailing window
    double trail_frac_vanish = 0.2;
    double trail_frac_transition = 0.3;
};

struct Outcome {
    OutcomeKind kind = OutcomeKind::Undetermined;
    double t_decided = 0;
    double final_sup_u = 0;
    double front_slope = 0;
    double ground_state_distance = std::numeric_limits<double>::quiet_NaN();
};

// Width 2 l_{theta*+delta} of the compact bump used by the spreading
// criterion (sufficient condition: u exceeds theta*+delta on a window that
// wide inside the g-region beyond the zone).
double spreading_window_width(const ReactionPair& pair, double delta_spread);

// Long-time outcome of a finished trajectory:
//   Vanishing:  h plateaued over the trailing window and sup u < eps_vanish.
//   Spreading:  the bump criterion fired on some snapshot (early decidable).
//   Transition: h grows, sup u stable inside (eps_vanish, theta*), and the
//               profile sits within eps_transition of a connected ground
//               state. (Separated-zone ground states are not constructed, so
//               separated runs are never certified as Transition.)
//   Undetermined otherwise.
Outcome classify(const Trajectory& traj, const ReactionPair& pair, const ZoneLayout& layout,
                 const ClassifierTolerances& tol = {});

// Run one probe with early exit as soon as Vanishing or Spreading is
// certified on the partial data.
Outcome probe_outcome(const ZoneLayout& layout, const ReactionPair& pair,
                      const InitialData& shape, double sigma, const SolverConfig& cfg,
                      const ClassifierTolerances& tol = {});

struct SigmaBand {
    double sigma = 0;
    Outcome outcome;
};

struct ThresholdReport {
    double sigma_lower = 0;  // sup of certified-Vanishing sigma (0 if none found)
    double sigma_upper = 0;  // inf of certified-Spreading sigma
    std::vector<SigmaBand> bands;
    double bisect_tol = 0;
    int probes_used = 0;
    bool complete = true;    // false when the probe budget ran out
};

// Exponential search for one Spreading and (when it exists) one Vanishing
// amplitude, then bisection on the two certified boundaries. Undetermined
// probes shrink no bracket; they are retried at off-center points and
// reported in bands.
ThresholdReport sigma_thresholds(const ZoneLayout& layout, const ReactionPair& pair,
                                 const InitialData& shape, const SolverConfig& cfg,
                                 double bisect_tol = 1e-3, int max_probes = 60,
                                 const ClassifierTolerances& tol = {});

struct OutcomeMatrix {
    std::vector<double> Ls, sigmas;
    std::vector<Outcome> cells;  // row-major, cells[i*sigmas.size()+j] for (Ls[i], sigmas[j])

    const Outcome& at(std::size_t i, std::size_t j) const { return cells[i * sigmas.size() + j]; }
};

// Outcomes over an (L, sigma) grid, distributed over a bounded worker pool
// (workers <= 0 selects the hardware concurrency). Deterministic: each cell
// depends only on its own parameters. Per-cell solver aborts surface as
// Undetermined.
OutcomeMatrix phase_diagram(const std::vector<double>& Ls, const std::vector<double>& sigmas,
                            ZoneLayout::Kind kind, double L1, const ReactionPair& pair,
                            double h0, const SolverConfig& cfg, int workers = 0,
                            const ClassifierTolerances& tol = {});

}  // namespace fbrd
