#include "fbrd/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace fbrd {

const char* to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Vanishing: return "Vanishing";
        case OutcomeKind::Spreading: return "Spreading";
        case OutcomeKind::Transition: return "Transition";
        default: return "Undetermined";
    }
}

double spreading_window_width(const ReactionPair& pair, double delta_spread) {
    return 2.0 * bump_halfwidth_quadrature(pair.theta_star + delta_spread, pair);
}

namespace {

// Longest run of u > level inside [x_lo, x_hi] (in length units).
double widest_exceedance(const Profile& prof, double level, double x_lo, double x_hi) {
    double best = 0, run_start = -1;
    for (std::size_t i = 0; i < prof.xs.size(); ++i) {
        const double x = prof.xs[i];
        const bool inside = (x >= x_lo && x <= x_hi && prof.us[i] > level);
        if (inside && run_start < 0) run_start = x;
        if (!inside && run_start >= 0) {
            best = std::max(best, prof.xs[i - 1] - run_start);
            run_start = -1;
        }
    }
    if (run_start >= 0) best = std::max(best, prof.xs.back() - run_start);
    return best;
}

// Sufficient-spreading windows: a compact bump fits under u whenever u
// exceeds some alpha in (theta*, 1) on a span of 2 l_alpha inside the
// g-region. The ladder starts at the configured margin theta* + delta and
// adds higher levels (narrower windows), each an instance of the same
// sufficiency argument.
struct SpreadWindows {
    std::vector<std::pair<double, double>> level_width;

    SpreadWindows(const ReactionPair& pair, double delta_spread) {
        std::vector<double> levels = {pair.theta_star + delta_spread};
        for (double a = 0.5; a < 0.96; a += 0.05)
            if (a > pair.theta_star + delta_spread) levels.push_back(a);
        for (double a : levels) {
            const double w = 2.0 * bump_halfwidth_quadrature(a, pair);
            if (std::isfinite(w) && w < 80.0) level_width.emplace_back(a, w);
        }
    }
};

// Spreading check over snapshots[from..]. Returns the time it first fired,
// or NaN. `from` lets incremental probes avoid rescanning old snapshots.
double spreading_decided_at(const Trajectory& traj, const ZoneLayout& layout,
                            const SpreadWindows& windows, std::size_t from = 0) {
    const double g_lo = layout.right_edge();
    for (std::size_t k = from; k < traj.snapshots.size(); ++k) {
        const auto& snap = traj.snapshots[k];
        const double h = snap.prof.xs.back();
        for (const auto& [level, width] : windows.level_width) {
            if (h - g_lo < width) continue;
            if (widest_exceedance(snap.prof, level, g_lo, h) >= width) return snap.t;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

bool front_plateaued(const Trajectory& traj, double trail_frac, double dh_max) {
    if (traj.ts.size() < 2) return false;
    const double t_end = traj.ts.back();
    const double t_from = t_end * (1.0 - trail_frac);
    const std::size_t i0 =
        std::lower_bound(traj.ts.begin(), traj.ts.end(), t_from) - traj.ts.begin();
    if (i0 >= traj.ts.size()) return false;
    return traj.hs.back() - traj.hs[i0] < dh_max;
}

double snapshot_sup(const Snapshot& s) {
    double m = 0;
    for (double v : s.prof.us) m = std::max(m, v);
    return m;
}

}  // namespace

Outcome classify(const Trajectory& traj, const ReactionPair& pair, const ZoneLayout& layout,
                 const ClassifierTolerances& tol) {
    Outcome out;
    if (traj.snapshots.empty()) return out;
    out.final_sup_u = snapshot_sup(traj.snapshots.back());
    if (traj.ts.size() * 0.3 >= 51)
        out.front_slope = front_speed_estimate(traj, 0.3);

    const SpreadWindows windows(pair, tol.delta_spread);
    const double t_spread = spreading_decided_at(traj, layout, windows);
    if (!std::isnan(t_spread)) {
        out.kind = OutcomeKind::Spreading;
        out.t_decided = t_spread;
        return out;
    }

    if (traj.aborted) return out;  // Undetermined with diagnostics upstream
    const double t_end = traj.ts.empty() ? 0.0 : traj.ts.back();
    const bool long_enough = t_end >= tol.t_min || traj.front_collapsed;
    if (!long_enough) return out;

    const bool plateaued = front_plateaued(traj, tol.trail_frac_vanish, tol.dh_plateau);
    if ((plateaued || traj.front_collapsed) && out.final_sup_u < tol.eps_vanish) {
        out.kind = OutcomeKind::Vanishing;
        out.t_decided = t_end;
        return out;
    }

    // Transition: growing front, amplitude stuck inside (eps_v, theta*), and
    // proximity to a ground state. Only certified for connected zones.
    if (!plateaued && layout.kind == ZoneLayout::Kind::Connected) {
        const double t_from = t_end * (1.0 - tol.trail_frac_transition);
        bool stable_band = true;
        for (const auto& snap : traj.snapshots) {
            if (snap.t < t_from) continue;
            const double s = snapshot_sup(snap);
            if (!(s > tol.eps_vanish && s < pair.theta_star)) {
                stable_band = false;
                break;
            }
        }
        if (stable_band) {
            const auto gs = ground_state_connected(layout.length(), pair);
            if (gs.exists) {
                const auto& last = traj.snapshots.back().prof;
                double dist = 0;
                for (std::size_t i = 0; i < last.xs.size(); ++i) {
                    const double U = (last.xs[i] <= gs.profile.xs.back())
                                         ? gs.profile.eval(last.xs[i])
                                         : 0.0;
                    dist = std::max(dist, std::abs(last.us[i] - U));
                }
                out.ground_state_distance = dist;
                if (dist < tol.eps_transition) {
                    out.kind = OutcomeKind::Transition;
                    out.t_decided = t_end;
                    return out;
                }
            }
        }
    }
    return out;
}

Outcome probe_outcome(const ZoneLayout& layout, const ReactionPair& pair,
                      const InitialData& shape, double sigma, const SolverConfig& cfg,
                      const ClassifierTolerances& tol) {
    InitialData init = shape;
    init.sigma = sigma;
    try {
        Simulator sim(layout, pair, init, cfg);
        const double check_every = 2.0;
        const SpreadWindows windows(pair, tol.delta_spread);
        std::size_t scanned = 0;
        while (!sim.finished()) {
            sim.advance(sim.t() + check_every);
            const auto& partial = sim.trajectory();
            // Early exits: Spreading is sufficient once visible; Vanishing
            // once the run is long enough to evaluate its trailing window.
            const double t_spread = spreading_decided_at(partial, layout, windows, scanned);
            scanned = partial.snapshots.size();
            if (!std::isnan(t_spread)) {
                Outcome out;
                out.kind = OutcomeKind::Spreading;
                out.t_decided = t_spread;
                out.final_sup_u = sim.sup_u();
                return out;
            }
            if (partial.front_collapsed) break;
            if (sim.t() >= tol.t_min && sim.sup_u() < tol.eps_vanish &&
                front_plateaued(partial, tol.trail_frac_vanish, tol.dh_plateau)) {
                Outcome out;
                out.kind = OutcomeKind::Vanishing;
                out.t_decided = sim.t();
                out.final_sup_u = sim.sup_u();
                return out;
            }
        }
        Simulator done = std::move(sim);
        return classify(done.take_trajectory(), pair, layout, tol);
    } catch (const NumericalError&) {
        return {};  // Undetermined
    }
}

namespace {

struct ProbeCache {
    std::vector<SigmaBand> bands;

    Outcome run(const ZoneLayout& layout, const ReactionPair& pair, const InitialData& shape,
                double sigma, const SolverConfig& cfg, const ClassifierTolerances& tol,
                int& budget) {
        for (const auto& b : bands)
            if (b.sigma == sigma) return b.outcome;
        --budget;
        const Outcome o = probe_outcome(layout, pair, shape, sigma, cfg, tol);
        bands.push_back({sigma, o});
        return o;
    }
};

}  // namespace

ThresholdReport sigma_thresholds(const ZoneLayout& layout, const ReactionPair& pair,
                                 const InitialData& shape, const SolverConfig& cfg,
                                 double bisect_tol, int max_probes,
                                 const ClassifierTolerances& tol) {
    if (!(bisect_tol > 0)) throw UsageError("sigma_thresholds: bisect_tol must be positive");
    ThresholdReport rep;
    rep.bisect_tol = bisect_tol;
    ProbeCache cache;
    int budget = max_probes;
    auto probe = [&](double s) { return cache.run(layout, pair, shape, s, cfg, tol, budget); };
    auto is_spread = [](const Outcome& o) { return o.kind == OutcomeKind::Spreading; };
    auto is_vanish = [](const Outcome& o) { return o.kind == OutcomeKind::Vanishing; };

    // Exponential search upward for a certified Spreading amplitude.
    double sigma_spread = 0;
    for (double s = 1.0; budget > 0 && s <= (1 << 20); s *= 2.0) {
        if (is_spread(probe(s))) {
            sigma_spread = s;
            break;
        }
    }
    // Exponential search downward for a certified Vanishing amplitude.
    double sigma_vanish = 0;
    for (double s = (sigma_spread > 0 ? sigma_spread / 4 : 0.25); budget > 0 && s >= 1e-6;
         s /= 2.0) {
        const auto o = probe(s);
        if (is_vanish(o)) {
            sigma_vanish = s;
            break;
        }
    }

    // One bisection per certified boundary. Undetermined probes shrink no
    // bracket; the midpoint is retried off-center and the loop gives up on a
    // fully undetermined plateau.
    auto bisect_boundary = [&](double lo, double hi, auto upper_side) {
        while (budget > 0 && (hi - lo) > bisect_tol * hi) {
            bool moved = false;
            for (double frac : {0.5, 0.25, 0.75}) {
                if (budget <= 0) break;
                const double mid = lo + (hi - lo) * frac;
                const auto o = probe(mid);
                if (o.kind == OutcomeKind::Undetermined) continue;
                if (upper_side(o))
                    hi = mid;
                else
                    lo = mid;
                moved = true;
                break;
            }
            if (!moved) break;
        }
        return std::pair{lo, hi};
    };

    if (sigma_spread > 0) {
        double hi = sigma_spread, lo = 0;
        for (const auto& b : cache.bands) {
            if (is_spread(b.outcome))
                hi = std::min(hi, b.sigma);
            else if (b.outcome.kind != OutcomeKind::Undetermined)
                lo = std::max(lo, b.sigma);
        }
        if (lo > 0)
            hi = bisect_boundary(lo, hi, is_spread).second;
        rep.sigma_upper = hi;
    }

    if (sigma_vanish > 0) {
        double lo = sigma_vanish;
        double hi = rep.sigma_upper > 0 ? rep.sigma_upper : sigma_vanish * 16;
        for (const auto& b : cache.bands)
            if (b.sigma > lo && b.outcome.kind != OutcomeKind::Undetermined &&
                !is_vanish(b.outcome))
                hi = std::min(hi, b.sigma);
        rep.sigma_lower = bisect_boundary(lo, hi, [&](const Outcome& o) {
                              return !is_vanish(o);
                          }).first;
    }

    rep.probes_used = max_probes - budget;
    rep.complete = budget > 0;
    std::sort(cache.bands.begin(), cache.bands.end(),
              [](const SigmaBand& a, const SigmaBand& b) { return a.sigma < b.sigma; });
    rep.bands = std::move(cache.bands);
    return rep;
}

OutcomeMatrix phase_diagram(const std::vector<double>& Ls, const std::vector<double>& sigmas,
                            ZoneLayout::Kind kind, double L1, const ReactionPair& pair,
                            double h0, const SolverConfig& cfg, int workers,
                            const ClassifierTolerances& tol) {
    if (Ls.empty() || sigmas.empty()) throw UsageError("phase_diagram: empty grids");
    OutcomeMatrix m;
    m.Ls = Ls;
    m.sigmas = sigmas;
    m.cells.resize(Ls.size() * sigmas.size());

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t pool =
        std::min<std::size_t>(workers > 0 ? workers : hw, m.cells.size());
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= m.cells.size()) return;
            const double L = Ls[k / sigmas.size()];
            const double sigma = sigmas[k % sigmas.size()];
            try {
                const ZoneLayout layout = (kind == ZoneLayout::Kind::Connected)
                                              ? ZoneLayout::connected(L)
                                              : ZoneLayout::separated(L1, L1 + L);
                const InitialData shape = InitialData::cosine(h0);
                m.cells[k] = probe_outcome(layout, pair, shape, sigma, cfg, tol);
            } catch (const std::exception&) {
                m.cells[k] = {};  // Undetermined
            }
        }
    };
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i + 1 < pool; ++i) threads.emplace_back(work);
    work();
    for (auto& th : threads) th.join();
    return m;
}

}  // namespace fbrd
