#pragma once

#include "fbrd/model.hpp"
#include "fbrd/phaseplane.hpp"
#include "fbrd/semiwave.hpp"

namespace fbrd {

struct SolverConfig {
    double dx_target = 0.05;
    double dt = 0;            // <= 0 selects the default 0.25 * dx_target^2
    double t_max = 200;
    double mu = 1.0;
    int snapshot_every = 0;   // steps between stored profiles; 0 -> auto (~0.5 time units)
    double h_floor = 1e-3;    // minimal allowed h - (zone right edge)

    double resolved_dt() const { return dt > 0 ? dt : 0.25 * dx_target * dx_target; }
    int resolved_snapshot_every() const {
        if (snapshot_every > 0) return snapshot_every;
        return std::max(1, static_cast<int>(0.5 / resolved_dt()));
    }
};

struct Snapshot {
    double t = 0;
    Profile prof;  // u on [0, h(t)], node positions in physical coordinates
};

struct Trajectory {
    std::vector<double> ts, hs;       // every accepted step
    std::vector<Snapshot> snapshots;  // every snapshot_every steps plus the final state
    ZoneLayout layout;
    SolverConfig config;
    double sigma = 1;
    bool front_collapsed = false;
    bool aborted = false;
    std::string diagnostic;

    double final_time() const { return ts.empty() ? 0.0 : ts.back(); }
    double final_h() const { return hs.empty() ? 0.0 : hs.back(); }
};

// Front-fixing IMEX solver for problems with a Stefan front at x = h(t).
// Fixed uniform grids cover the zone-side blocks; the tail [edge, h(t)] is
// mapped to [0,1], which adds the advection term y h'/(h-edge) u_y. Diffusion
// and advection are implicit (one tridiagonal solve spanning all blocks, flux
// continuity at the joins), reaction explicit. The front moves by
// h <- h + dt * (-mu u_x(t,h)) with a second-order one-sided difference.
class Simulator {
  public:
    Simulator(const ZoneLayout& layout, const ReactionPair& pair, const InitialData& init,
              const SolverConfig& cfg);

    void step();
    // Advance until t >= t_target (capped at t_max) or the run aborts.
    void advance(double t_target);
    bool finished() const;

    double t() const { return t_; }
    double h() const { return h_; }
    double sup_u() const;
    Profile current_profile() const;

    const Trajectory& trajectory() const { return traj_; }
    Trajectory take_trajectory();

  private:
    void record_step();
    void maybe_snapshot(bool force);
    void regrid_tail();
    double front_gradient() const;
    double reaction_at(std::size_t i, double u) const;

    const ReactionPair pair_;
    ZoneLayout layout_;
    SolverConfig cfg_;
    double dt_ = 0;
    double t_ = 0;
    double h_ = 0;
    long step_count_ = 0;

    // Node layout: fixed blocks share join nodes; the last block is the
    // mapped tail. nodes_ holds u at every grid node including u(h) = 0.
    struct Block {
        double x_lo = 0, x_hi = 0;  // physical extent (tail: x_hi tracks h)
        int n = 0;                  // cells in the block
        bool is_zone = false;       // reaction f inside, g outside
        bool mapped = false;
    };
    std::vector<Block> blocks_;
    std::vector<double> u_;
    std::vector<double> dl_, dd_, du_, rhs_;  // tridiagonal scratch

    Trajectory traj_;
};

Trajectory simulate(const ZoneLayout& layout, const ReactionPair& pair, const InitialData& init,
                    const SolverConfig& cfg);

// Least-squares slope of h(t) over the trailing window_fraction of the run.
double front_speed_estimate(const Trajectory& traj, double window_fraction);

// Per-snapshot sup-norm of u(t,x) - q_{c*}(h(t)-x). Returns (t, error) pairs.
std::vector<std::pair<double, double>> profile_error_vs_semiwave(const Trajectory& traj,
                                                                 const SemiWave& sw);

}  // namespace fbrd
