#include <doctest.h>

#include <cmath>

#include "fbrd/classify.hpp"

using namespace fbrd;

namespace {

const ReactionPair& cubic25() {
    static const ReactionPair p = make_cubic_pair(0.25);
    return p;
}

// Synthetic trajectory with prescribed front path and profiles.
Trajectory synth(const ZoneLayout& lay, double t_end,
                 const std::function<double(double)>& h_of_t,
                 const std::function<double(double, double)>& u_of_tx) {
    Trajectory traj;
    traj.layout = lay;
    const int n_steps = 2000;
    for (int i = 0; i <= n_steps; ++i) {
        const double t = t_end * i / n_steps;
        traj.ts.push_back(t);
        traj.hs.push_back(h_of_t(t));
    }
    for (int k = 0; k <= 60; ++k) {
        const double t = t_end * k / 60;
        Snapshot s;
        s.t = t;
        const double h = h_of_t(t);
        for (int i = 0; i <= 400; ++i) {
            const double x = h * i / 400;
            s.prof.xs.push_back(x);
            s.prof.us.push_back(std::max(0.0, u_of_tx(t, x)));
        }
        s.prof.us.back() = 0.0;
        traj.snapshots.push_back(std::move(s));
    }
    return traj;
}

}  // namespace

TEST_CASE("spreading window width matches the bump half-width") {
    const auto& p = cubic25();
    const double w = spreading_window_width(p, 0.02);
    CHECK(w == doctest::Approx(2.0 * bump_halfwidth_quadrature(p.theta_star + 0.02, p)));
    CHECK(w > 10.0);
    CHECK(w < 20.0);
}

TEST_CASE("synthetic decaying trajectory classifies as Vanishing") {
    const auto lay = ZoneLayout::connected(0.3);
    const auto traj = synth(
        lay, 80.0, [](double) { return 1.0; },
        [](double t, double x) { return std::exp(-0.2 * t) * std::cos(1.5 * x); });
    const auto out = classify(traj, cubic25(), lay);
    CHECK(out.kind == OutcomeKind::Vanishing);
    CHECK(out.final_sup_u < 1e-3);
}

TEST_CASE("synthetic ground-state-hugging trajectory classifies as Transition") {
    const auto& p = cubic25();
    const double L = 0.3;
    const auto gs = ground_state_connected(L, p);
    REQUIRE(gs.exists);
    const double extent = gs.profile.xs.back();
    const auto lay = ZoneLayout::connected(L);
    const auto traj = synth(
        lay, 80.0, [extent](double t) { return extent + 0.003 * t; },
        [&gs](double t, double x) {
            const double U = (x <= gs.profile.xs.back()) ? gs.profile.eval(x) : 0.0;
            return U + 0.01 * std::exp(-0.1 * t) * U;
        });
    const auto out = classify(traj, p, lay);
    CHECK(out.kind == OutcomeKind::Transition);
    CHECK(out.ground_state_distance < 0.05);
}

TEST_CASE("short undecided trajectories stay Undetermined") {
    const auto lay = ZoneLayout::connected(0.3);
    const auto traj = synth(
        lay, 10.0, [](double t) { return 1.0 + 0.05 * t; },
        [](double, double x) { return 0.2 * std::cos(1.5 * x); });
    CHECK(classify(traj, cubic25(), lay).kind == OutcomeKind::Undetermined);
}

TEST_CASE("probe outcomes: vanishing and spreading ends of the sigma axis") {
    const auto& p = cubic25();
    SolverConfig cfg;
    cfg.dx_target = 0.05;
    cfg.t_max = 150;
    const auto lay = ZoneLayout::connected(0.3);
    // Support wide enough to hold a sufficient-spreading window; narrow
    // supports vanish at every numerically reachable amplitude.
    const auto shape = InitialData::cosine(17.0, 1.0);

    const auto van = probe_outcome(lay, p, shape, 0.05, cfg);
    CHECK(van.kind == OutcomeKind::Vanishing);
    CHECK(van.final_sup_u < 1e-3);

    const auto spr = probe_outcome(lay, p, shape, 4.0, cfg);
    CHECK(spr.kind == OutcomeKind::Spreading);
    CHECK(spr.t_decided >= 0);
}

TEST_CASE("spreading decision is robust to halving the bump margin") {
    const auto& p = cubic25();
    SolverConfig cfg;
    cfg.dx_target = 0.05;
    cfg.t_max = 150;
    const auto lay = ZoneLayout::connected(0.3);
    ClassifierTolerances tol;
    tol.delta_spread = 0.01;  // half the default
    const auto out = probe_outcome(lay, p, InitialData::cosine(17.0, 1.0), 4.0, cfg, tol);
    CHECK(out.kind == OutcomeKind::Spreading);
}

TEST_CASE("sigma thresholds at L = 0.3: finite positive band edges") {
    const auto& p = cubic25();
    SolverConfig cfg;
    cfg.dx_target = 0.05;
    cfg.t_max = 150;
    const auto lay = ZoneLayout::connected(0.3);
    const auto rep = sigma_thresholds(lay, p, InitialData::cosine(17.0, 1.0), cfg,
                                      /*bisect_tol=*/0.05, /*max_probes=*/30);
    CHECK(rep.sigma_lower > 0);
    CHECK(rep.sigma_upper < 1e9);
    CHECK(rep.sigma_lower <= rep.sigma_upper);
    CHECK(rep.probes_used <= 30);

    // Outcome monotone in sigma across the evaluated bands.
    double max_vanish = 0, min_spread = 1e18;
    for (const auto& b : rep.bands) {
        if (b.outcome.kind == OutcomeKind::Vanishing) max_vanish = std::max(max_vanish, b.sigma);
        if (b.outcome.kind == OutcomeKind::Spreading) min_spread = std::min(min_spread, b.sigma);
    }
    CHECK(max_vanish < min_spread);
    CHECK(rep.sigma_lower >= max_vanish - 1e-12);
    CHECK(rep.sigma_upper <= min_spread + 1e-12);
}

TEST_CASE("phase diagram: large zones spread, small zones with small sigma vanish") {
    const auto& p = cubic25();
    SolverConfig cfg;
    cfg.dx_target = 0.08;
    cfg.t_max = 140;
    const auto m = phase_diagram({0.3, 2.0}, {0.05, 1.0, 6.0}, ZoneLayout::Kind::Connected, 0.0,
                                 p, /*h0=*/17.0, cfg, /*workers=*/3);
    REQUIRE(m.cells.size() == 6);
    // Row L = 2 > max(L-star-upper, L_**): every sigma spreads.
    for (std::size_t j = 0; j < 3; ++j) {
        INFO("sigma = ", m.sigmas[j]);
        CHECK(m.at(1, j).kind == OutcomeKind::Spreading);
    }
    // Small zone, small sigma: vanishing.
    CHECK(m.at(0, 0).kind == OutcomeKind::Vanishing);
    // Small zone, large sigma: spreading.
    CHECK(m.at(0, 2).kind == OutcomeKind::Spreading);
}
