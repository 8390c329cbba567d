#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "fbrd/classify.hpp"
#include "fbrd/runio.hpp"
#include "fbrd/spectral.hpp"
#include "fbrd/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fbrd;

namespace {

// Shared model/run options resolved from flags, config file and environment.
struct CommonOpts {
    std::string pair_name = "cubic";
    double theta = 0.25;
    std::vector<double> f_coeffs, g_coeffs;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& c, const std::string& default_out) {
    cmd->set_config("--config", "", "flat key=value config file; flags override");
    cmd->add_option("--pair", c.pair_name, "reaction pair: cubic|poly")
        ->envname("FBRD_PAIR");
    cmd->add_option("--theta", c.theta, "Allee threshold of the cubic pair")
        ->envname("FBRD_THETA");
    cmd->add_option("--f-coeffs", c.f_coeffs, "ascending coefficients of f (pair=poly)");
    cmd->add_option("--g-coeffs", c.g_coeffs, "ascending coefficients of g (pair=poly)");
    c.out_dir = default_out;
    cmd->add_option("--out", c.out_dir, "run directory")->envname("FBRD_OUT");
}

ReactionPair resolve_pair(const CommonOpts& c) {
    ReactionPair pair =
        (c.pair_name == "poly") ? make_poly_pair(c.f_coeffs, c.g_coeffs) : make_cubic_pair(c.theta);
    const auto rep = validate(pair);
    if (!rep.all_pass) {
        std::string msg = "hypothesis validation failed:";
        for (const auto& ck : rep.checks)
            if (!ck.pass) msg += " [" + ck.name + " at u=" + format_g17(ck.where) + "]";
        throw ValidationError(msg);
    }
    return pair;
}

struct RunDir {
    fs::path dir;
    RunManifest manifest;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    RunDir(const std::string& out, const std::string& command) : dir(out) {
        fs::create_directories(dir);
        manifest.command = command;
        manifest.version = kVersion;
    }
    void param(const std::string& k, const std::string& v) { manifest.params[k] = v; }
    void param(const std::string& k, double v) { manifest.params[k] = format_g17(v); }
    void output(const std::string& file) { manifest.outputs.push_back({file, ""}); }
    std::string checksum_hex() const {
        std::string all;
        for (const auto& [k, v] : manifest.params) all += k + "=" + v + "\n";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(all)));
        return buf;
    }
    void finish() {
        manifest.duration_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        write_manifest(dir, manifest);
        std::printf("wrote %s\n", (dir / "manifest.json").c_str());
    }
};

json outcome_json(const Outcome& o) {
    json j;
    j["kind"] = to_string(o.kind);
    j["t_decided"] = o.t_decided;
    j["final_sup_u"] = o.final_sup_u;
    j["front_slope"] = o.front_slope;
    if (std::isfinite(o.ground_state_distance))
        j["ground_state_distance"] = o.ground_state_distance;
    return j;
}

void write_profile_csv(const fs::path& path, const Profile& prof) {
    std::vector<std::vector<double>> rows;
    rows.reserve(prof.size());
    for (std::size_t i = 0; i < prof.size(); ++i) rows.push_back({prof.xs[i], prof.us[i]});
    write_csv(path, {"x", "u"}, rows);
}

PlotSeries profile_series(const Profile& prof, const std::string& label) {
    return {prof.xs, prof.us, label};
}

double inf_to_neg1(double v) { return std::isinf(v) ? -1.0 : v; }

// ----------------------------------------------------------------- criticals

int cmd_criticals(const CommonOpts& c, const std::vector<double>& Ls, std::optional<double> L1) {
    const auto pair = resolve_pair(c);
    RunDir run(c.out_dir, "criticals");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);

    auto rep = spectral_report(pair, Ls, L1);
    const double Lsup = L_star_upper(pair);
    const double c0 = wave_speed_c0(pair);

    std::printf("%-14s %s\n", "theta*", format_g17(rep.theta_star).c_str());
    std::printf("%-14s %s\n", "L_*", format_g17(rep.L_star).c_str());
    std::printf("%-14s %s\n", "L_**", format_g17(rep.L_dstar).c_str());
    std::printf("%-14s %s\n", "L_star_upper", format_g17(Lsup).c_str());
    std::printf("%-14s %s\n", "c0", format_g17(c0).c_str());
    std::printf("%8s %16s %16s %16s\n", "L", "lambda1", "R_star", "h_star");
    for (const auto& row : rep.rows)
        std::printf("%8.4f %16.8f %16.8f %16.8f\n", row.L, row.lambda1, inf_to_neg1(row.R_star),
                    inf_to_neg1(row.h_star));
    if (rep.tilde_L_star) {
        std::printf("%-14s %s\n", "tilde_L_*", format_g17(*rep.tilde_L_star).c_str());
        std::printf("%-14s %s\n", "tilde_L_**", format_g17(*rep.tilde_L_dstar).c_str());
    }

    json j;
    j["theta_star"] = rep.theta_star;
    j["L_star"] = rep.L_star;
    j["L_double_star"] = rep.L_dstar;
    j["L_star_upper"] = Lsup;
    j["c0"] = c0;
    auto& rows = j["rows"] = json::array();
    std::vector<std::vector<double>> csv_rows;
    for (const auto& row : rep.rows) {
        rows.push_back({{"L", row.L},
                        {"lambda1", row.lambda1},
                        {"R_star", inf_to_neg1(row.R_star)},
                        {"h_star", inf_to_neg1(row.h_star)}});
        csv_rows.push_back({row.L, row.lambda1, inf_to_neg1(row.R_star), inf_to_neg1(row.h_star)});
    }
    if (rep.tilde_L_star) {
        j["L1"] = *rep.L1;
        j["tilde_L_star"] = *rep.tilde_L_star;
        j["tilde_L_double_star"] = *rep.tilde_L_dstar;
        auto& trows = j["tilde_rows"] = json::array();
        for (const auto& row : *rep.tilde_rows)
            trows.push_back({{"L", row.L},
                             {"lambda1", row.lambda1},
                             {"R_star", inf_to_neg1(row.R_star)},
                             {"h_star", inf_to_neg1(row.h_star)}});
    }
    std::ofstream(run.dir / "criticals.json") << j.dump(2) << "\n";
    write_csv(run.dir / "criticals.csv", {"L", "lambda1", "R_star", "h_star"}, csv_rows);
    run.param("L_count", static_cast<double>(Ls.size()));
    if (L1) run.param("L1", *L1);
    run.output("criticals.json");
    run.output("criticals.csv");
    run.finish();
    return 0;
}

// ---------------------------------------------------------------- groundstate

int cmd_groundstate(const CommonOpts& c, double L) {
    const auto pair = resolve_pair(c);
    RunDir run(c.out_dir, "groundstate");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);
    run.param("L", L);

    const auto gs = ground_state_connected(L, pair);
    json j;
    j["exists"] = gs.exists;
    j["L"] = L;
    if (gs.exists) {
        j["a"] = gs.a;
        write_profile_csv(run.dir / "groundstate.csv", gs.profile);
        write_line_chart_svg(run.dir / "groundstate.svg", {profile_series(gs.profile, "U(x)")},
                             "connected ground state, L=" + format_g17(L), "x", "U",
                             run.checksum_hex());
        run.output("groundstate.csv");
        run.output("groundstate.svg");
        std::printf("ground state exists: a = %s\n", format_g17(gs.a).c_str());
    } else {
        std::printf("no ground state at L = %s\n", format_g17(L).c_str());
    }
    std::ofstream(run.dir / "groundstate.json") << j.dump(2) << "\n";
    run.output("groundstate.json");
    run.finish();
    return 0;
}

// ----------------------------------------------------------------------- bump

int cmd_bump(const CommonOpts& c, double alpha) {
    const auto pair = resolve_pair(c);
    RunDir run(c.out_dir, "bump");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);
    run.param("alpha", alpha);

    const auto b = bump_solution(alpha, pair);
    const double l_quad = bump_halfwidth_quadrature(alpha, pair);
    json j;
    j["alpha"] = alpha;
    j["half_width_orbit"] = b.half_width;
    j["half_width_quadrature"] = l_quad;
    std::ofstream(run.dir / "bump.json") << j.dump(2) << "\n";
    write_profile_csv(run.dir / "bump.csv", b.profile);
    write_line_chart_svg(run.dir / "bump.svg", {profile_series(b.profile, "v_alpha")},
                         "compact bump, alpha=" + format_g17(alpha), "x", "v",
                         run.checksum_hex());
    std::printf("l_alpha = %s (orbit), %s (quadrature)\n", format_g17(b.half_width).c_str(),
                format_g17(l_quad).c_str());
    run.output("bump.json");
    run.output("bump.csv");
    run.output("bump.svg");
    run.finish();
    return 0;
}

// -------------------------------------------------------------------- semiwave

int cmd_semiwave(const CommonOpts& c, double mu) {
    const auto pair = resolve_pair(c);
    RunDir run(c.out_dir, "semiwave");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);
    run.param("mu", mu);

    const auto sw = semi_wave(mu, pair);
    json j;
    j["mu"] = sw.mu;
    j["c0"] = sw.c0;
    j["c_star"] = sw.c_star;
    j["qprime0"] = sw.qprime0;
    j["residual"] = sw.residual;
    std::ofstream(run.dir / "semiwave.json") << j.dump(2) << "\n";
    write_profile_csv(run.dir / "semiwave.csv", sw.profile);
    write_line_chart_svg(run.dir / "semiwave.svg", {profile_series(sw.profile, "q(z)")},
                         "semi-wave profile, mu=" + format_g17(mu), "z", "q",
                         run.checksum_hex());
    std::printf("c0 = %s\nc* = %s (residual %s)\n", format_g17(sw.c0).c_str(),
                format_g17(sw.c_star).c_str(), format_g17(sw.residual).c_str());
    run.output("semiwave.json");
    run.output("semiwave.csv");
    run.output("semiwave.svg");
    run.finish();
    return 0;
}

// -------------------------------------------------------------------- simulate

struct GeometryOpts {
    double L = 0;
    double L1 = 0, L2 = 0;

    ZoneLayout layout() const {
        if (L1 > 0 || L2 > 0) return ZoneLayout::separated(L1, L2);
        return ZoneLayout::connected(L);
    }
};

void add_geometry(CLI::App* cmd, GeometryOpts& g) {
    cmd->add_option("--L", g.L, "connected zone length [0, L]")->envname("FBRD_L");
    cmd->add_option("--L1", g.L1, "separated zone left edge");
    cmd->add_option("--L2", g.L2, "separated zone right edge");
}

int cmd_simulate(const CommonOpts& c, const GeometryOpts& g, double sigma, double h0,
                 const SolverConfig& cfg) {
    const auto pair = resolve_pair(c);
    const auto layout = g.layout();
    RunDir run(c.out_dir, "simulate");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);
    run.param("kind", layout.kind == ZoneLayout::Kind::Connected ? "connected" : "separated");
    run.param("L1", layout.L1);
    run.param("L2", layout.L2);
    run.param("sigma", sigma);
    run.param("h0", h0);
    run.param("mu", cfg.mu);
    run.param("dx", cfg.dx_target);
    run.param("dt", cfg.resolved_dt());
    run.param("t_max", cfg.t_max);
    run.param("profile", "cosine");  // default member of X(h0)

    const auto init = InitialData::cosine(h0, sigma);
    const auto traj = simulate(layout, pair, init, cfg);
    if (traj.aborted) throw NumericalError("simulate: " + traj.diagnostic);

    std::vector<std::vector<double>> hrows;
    const std::size_t stride = std::max<std::size_t>(1, traj.ts.size() / 200000);
    for (std::size_t i = 0; i < traj.ts.size(); i += stride)
        hrows.push_back({traj.ts[i], traj.hs[i]});
    if ((traj.ts.size() - 1) % stride != 0)
        hrows.push_back({traj.ts.back(), traj.hs.back()});
    write_csv(run.dir / "front.csv", {"t", "h"}, hrows);
    run.output("front.csv");

    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_%04zu.csv", k);
        write_profile_csv(run.dir / name, traj.snapshots[k].prof);
        run.output(name);
    }

    PlotSeries hseries;
    for (const auto& r : hrows) {
        hseries.xs.push_back(r[0]);
        hseries.ys.push_back(r[1]);
    }
    hseries.label = "h(t)";
    write_line_chart_svg(run.dir / "front.svg", {hseries}, "front path", "t", "h",
                         run.checksum_hex());
    write_line_chart_svg(run.dir / "final_profile.svg",
                         {profile_series(traj.snapshots.back().prof, "u(t_end, x)")},
                         "final profile", "x", "u", run.checksum_hex());
    run.output("front.svg");
    run.output("final_profile.svg");

    const auto out = classify(traj, pair, layout);
    json j;
    j["outcome"] = outcome_json(out);
    j["final_h"] = traj.final_h();
    j["final_time"] = traj.final_time();
    j["front_collapsed"] = traj.front_collapsed;
    std::ofstream(run.dir / "summary.json") << j.dump(2) << "\n";
    run.output("summary.json");
    std::printf("t_end = %s, h_end = %s, outcome = %s\n", format_g17(traj.final_time()).c_str(),
                format_g17(traj.final_h()).c_str(), to_string(out.kind));
    run.finish();
    return 0;
}

// ------------------------------------------------------------------ thresholds

int cmd_thresholds(const CommonOpts& c, const GeometryOpts& g, double h0,
                   const SolverConfig& cfg, double bisect_tol, int max_probes) {
    const auto pair = resolve_pair(c);
    const auto layout = g.layout();
    RunDir run(c.out_dir, "thresholds");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);
    run.param("kind", layout.kind == ZoneLayout::Kind::Connected ? "connected" : "separated");
    run.param("L1", layout.L1);
    run.param("L2", layout.L2);
    run.param("h0", h0);
    run.param("mu", cfg.mu);
    run.param("dx", cfg.dx_target);
    run.param("t_max", cfg.t_max);
    run.param("bisect_tol", bisect_tol);
    run.param("max_probes", static_cast<double>(max_probes));

    const auto rep =
        sigma_thresholds(layout, pair, InitialData::cosine(h0), cfg, bisect_tol, max_probes);

    json j;
    j["sigma_lower"] = rep.sigma_lower;
    j["sigma_upper"] = rep.sigma_upper;
    j["bisect_tol"] = rep.bisect_tol;
    j["probes_used"] = rep.probes_used;
    j["complete"] = rep.complete;
    auto& bands = j["bands"] = json::array();
    std::vector<std::vector<double>> rows;
    for (const auto& b : rep.bands) {
        bands.push_back({{"sigma", b.sigma}, {"outcome", to_string(b.outcome.kind)}});
        rows.push_back({b.sigma, static_cast<double>(b.outcome.kind == OutcomeKind::Vanishing   ? 0
                                                     : b.outcome.kind == OutcomeKind::Spreading ? 2
                                                                                                : 1)});
    }
    std::ofstream(run.dir / "thresholds.json") << j.dump(2) << "\n";
    write_csv(run.dir / "bands.csv", {"sigma", "outcome_code"}, rows);
    std::printf("sigma_* ~ %s, sigma^* ~ %s (%d probes%s)\n", format_g17(rep.sigma_lower).c_str(),
                format_g17(rep.sigma_upper).c_str(), rep.probes_used,
                rep.complete ? "" : ", budget exhausted");
    run.output("thresholds.json");
    run.output("bands.csv");
    run.finish();
    return 0;
}

// ---------------------------------------------------------------- phasediagram

int cmd_phasediagram(const CommonOpts& c, const std::string& L_range,
                     const std::string& sigma_range, const std::string& kind, double L1,
                     double h0, const SolverConfig& cfg, int workers) {
    const auto pair = resolve_pair(c);
    RunDir run(c.out_dir, "phasediagram");
    run.param("pair", pair.name);
    run.param("theta", pair.theta);
    run.param("kind", kind);
    run.param("L", L_range);
    run.param("sigma", sigma_range);
    run.param("L1", L1);
    run.param("h0", h0);
    run.param("mu", cfg.mu);
    run.param("dx", cfg.dx_target);
    run.param("t_max", cfg.t_max);

    const auto Ls = Range::parse(L_range).expand();
    const auto sigmas = Range::parse(sigma_range).expand();
    const auto mkind =
        (kind == "separated") ? ZoneLayout::Kind::Separated : ZoneLayout::Kind::Connected;
    const auto m = phase_diagram(Ls, sigmas, mkind, L1, pair, h0, cfg, workers);

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m.Ls.size(); ++i)
        for (std::size_t j = 0; j < m.sigmas.size(); ++j) {
            const auto& o = m.at(i, j);
            rows.push_back({m.Ls[i], m.sigmas[j],
                            static_cast<double>(o.kind == OutcomeKind::Vanishing   ? 0
                                                : o.kind == OutcomeKind::Spreading ? 2
                                                                                   : 1),
                            o.t_decided});
        }
    write_csv(run.dir / "outcomes.csv", {"L", "sigma", "outcome_code", "t_decided"}, rows);
    write_outcome_heatmap_svg(run.dir / "outcomes.svg", m, "long-time outcomes",
                              run.checksum_hex());
    run.output("outcomes.csv");
    run.output("outcomes.svg");
    run.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-boundary reaction-diffusion lab with a protection zone"};
    app.require_subcommand(1);

    CommonOpts c_crit, c_gs, c_bump, c_sw, c_sim, c_thr, c_pd;

    auto* crit = app.add_subcommand("criticals", "critical lengths, radii and eigenvalues");
    add_common(crit, c_crit, "out/criticals");
    std::string crit_L = "0.25:2.0:8";
    std::optional<double> crit_L1;
    crit->add_option("--L", crit_L, "zone lengths, start:stop:count or single value");
    double crit_L1_val = 0;
    auto* crit_L1_opt = crit->add_option("--L1", crit_L1_val, "separated zone left edge");

    auto* gs = app.add_subcommand("groundstate", "connected ground state at zone length L");
    add_common(gs, c_gs, "out/groundstate");
    double gs_L = 0.3;
    gs->add_option("--L", gs_L, "zone length")->envname("FBRD_L");

    auto* bump = app.add_subcommand("bump", "compact bump solution and its half-width");
    add_common(bump, c_bump, "out/bump");
    double bump_alpha = 0.75;
    bump->add_option("--alpha", bump_alpha, "bump peak in (theta*, 1)");

    auto* sw = app.add_subcommand("semiwave", "semi-wave speed and profile");
    add_common(sw, c_sw, "out/semiwave");
    double sw_mu = 1.0;
    sw->add_option("--mu", sw_mu, "front coefficient")->envname("FBRD_MU");

    auto* sim = app.add_subcommand("simulate", "run one free-boundary simulation");
    add_common(sim, c_sim, "out/simulate");
    GeometryOpts sim_geo;
    add_geometry(sim, sim_geo);
    double sim_sigma = 1.0, sim_h0 = 2.0;
    SolverConfig sim_cfg;
    sim->add_option("--sigma", sim_sigma, "initial amplitude")->envname("FBRD_SIGMA");
    sim->add_option("--h0", sim_h0, "initial front position")->envname("FBRD_H0");
    sim->add_option("--dx", sim_cfg.dx_target, "target grid spacing");
    sim->add_option("--dt", sim_cfg.dt, "time step (default 0.25 dx^2)");
    sim->add_option("--tmax", sim_cfg.t_max, "time horizon");
    sim->add_option("--mu", sim_cfg.mu, "front coefficient")->envname("FBRD_MU");
    sim->add_option("--snapshot-every", sim_cfg.snapshot_every, "steps between snapshots");

    auto* thr = app.add_subcommand("thresholds", "sharp sigma thresholds by bisection");
    add_common(thr, c_thr, "out/thresholds");
    GeometryOpts thr_geo;
    add_geometry(thr, thr_geo);
    double thr_h0 = 17.0, thr_tol = 1e-3;
    int thr_probes = 60;
    SolverConfig thr_cfg;
    thr->add_option("--h0", thr_h0, "initial front position")->envname("FBRD_H0");
    thr->add_option("--mu", thr_cfg.mu, "front coefficient")->envname("FBRD_MU");
    thr->add_option("--dx", thr_cfg.dx_target, "target grid spacing");
    thr->add_option("--tmax", thr_cfg.t_max, "per-probe time horizon");
    thr->add_option("--bisect-tol", thr_tol, "relative bracket tolerance");
    thr->add_option("--max-probes", thr_probes, "probe budget");

    auto* pd = app.add_subcommand("phasediagram", "outcome matrix over (L, sigma)");
    add_common(pd, c_pd, "out/phasediagram");
    std::string pd_L = "0.2:2.0:10", pd_sigma = "0.05:5:12", pd_kind = "connected";
    double pd_L1 = 1.0, pd_h0 = 17.0;
    int pd_workers = 0;
    SolverConfig pd_cfg;
    pd->add_option("--L", pd_L, "zone lengths start:stop:count");
    pd->add_option("--sigma", pd_sigma, "amplitudes start:stop:count");
    pd->add_option("--kind", pd_kind, "connected|separated");
    pd->add_option("--L1", pd_L1, "separated zone left edge");
    pd->add_option("--h0", pd_h0, "initial front position")->envname("FBRD_H0");
    pd->add_option("--mu", pd_cfg.mu, "front coefficient")->envname("FBRD_MU");
    pd->add_option("--dx", pd_cfg.dx_target, "target grid spacing");
    pd->add_option("--tmax", pd_cfg.t_max, "per-cell time horizon");
    pd->add_option("--workers", pd_workers, "worker pool size (0 = logical cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::fprintf(stderr, "error: code=2 kind=usage msg=\"%s\"\n", e.what());
        return 2;
    }

    try {
        if (crit->parsed()) {
            if (crit_L1_opt->count() > 0) crit_L1 = crit_L1_val;
            return cmd_criticals(c_crit, Range::parse(crit_L).expand(), crit_L1);
        }
        if (gs->parsed()) return cmd_groundstate(c_gs, gs_L);
        if (bump->parsed()) return cmd_bump(c_bump, bump_alpha);
        if (sw->parsed()) return cmd_semiwave(c_sw, sw_mu);
        if (sim->parsed()) return cmd_simulate(c_sim, sim_geo, sim_sigma, sim_h0, sim_cfg);
        if (thr->parsed()) return cmd_thresholds(c_thr, thr_geo, thr_h0, thr_cfg, thr_tol,
                                                 thr_probes);
        if (pd->parsed())
            return cmd_phasediagram(c_pd, pd_L, pd_sigma, pd_kind, pd_L1, pd_h0, pd_cfg,
                                    pd_workers);
        std::fprintf(stderr, "error: code=2 kind=usage msg=\"no subcommand\"\n");
        return 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: code=2 kind=usage msg=\"%s\"\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: code=3 kind=validation msg=\"%s\"\n", e.what());
        return 3;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "error: code=4 kind=numerical msg=\"%s\"\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: code=4 kind=internal msg=\"%s\"\n", e.what());
        return 4;
    }
}
