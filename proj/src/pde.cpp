#include "fbrd/pde.hpp"

#include <algorithm>
#include <cmath>

namespace fbrd {

namespace {

double horner(const std::vector<double>& c, double u) {
    double r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * u + c[i];
    return r;
}

// Catmull-Rom interpolation on a uniform grid given by values v[0..n] at
// y = i/n; one-sided quadratic at the ends.
double interp_uniform_cubic(const std::vector<double>& v, int n, double y) {
    const double s = y * n;
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, n - 1);
    const double t = s - i;
    const double p1 = v[i], p2 = v[i + 1];
    const double p0 = (i > 0) ? v[i - 1] : 2 * p1 - p2;
    const double p3 = (i + 2 <= n) ? v[i + 2] : 2 * p2 - p1;
    return p1 + 0.5 * t * (p2 - p0 + t * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                          t * (3 * (p1 - p2) + p3 - p0)));
}

}  // namespace

Simulator::Simulator(const ZoneLayout& layout, const ReactionPair& pair, const InitialData& init,
                     const SolverConfig& cfg)
    : pair_(pair), layout_(layout), cfg_(cfg) {
    if (!(cfg.dx_target > 0 && cfg.t_max > 0 && cfg.mu > 0 && cfg.h_floor > 0))
        throw UsageError("SolverConfig: dx_target, t_max, mu, h_floor must be positive");
    dt_ = cfg.resolved_dt();
    if (!(dt_ > 0)) throw UsageError("SolverConfig: dt must be positive");
    if (dt_ * std::max(pair.lip_f, pair.lip_g) > 2.0)
        throw UsageError("SolverConfig: dt exceeds the explicit-reaction stability bound");

    const double edge = layout.right_edge();
    if (!(init.h0 > edge + cfg.h_floor))
        throw ValidationError("simulate: h0 must exceed the zone right edge by h_floor");

    h_ = init.h0;
    auto cells = [&](double len) {
        return std::max(2, static_cast<int>(std::lround(len / cfg.dx_target)));
    };
    if (layout.kind == ZoneLayout::Kind::Connected) {
        blocks_.push_back({0.0, layout.L2, cells(layout.L2), true, false});
    } else {
        blocks_.push_back({0.0, layout.L1, cells(layout.L1), false, false});
        blocks_.push_back({layout.L1, layout.L2, cells(layout.length()), true, false});
    }
    blocks_.push_back({edge, h_, cells(h_ - edge), false, true});

    std::size_t total = 1;
    for (const auto& b : blocks_) total += static_cast<std::size_t>(b.n);
    u_.resize(total);
    std::size_t idx = 0;
    for (const auto& b : blocks_) {
        for (int i = 0; i < b.n; ++i) {
            const double x = b.x_lo + (b.x_hi - b.x_lo) * i / b.n;
            u_[idx++] = init.sigma * init.eval(x);
        }
    }
    u_.back() = 0.0;

    traj_.layout = layout;
    traj_.config = cfg;
    traj_.sigma = init.sigma;
    traj_.ts.push_back(0.0);
    traj_.hs.push_back(h_);
    maybe_snapshot(true);
}

double Simulator::front_gradient() const {
    const auto& tail = blocks_.back();
    const double delta = (h_ - tail.x_lo) / tail.n;
    const std::size_t N = u_.size() - 1;
    return (3.0 * u_[N] - 4.0 * u_[N - 1] + u_[N - 2]) / (2.0 * delta);
}

double Simulator::reaction_at(std::size_t i, double u) const {
    // Block lookup by cumulative node index; junction nodes get the
    // half-cell-weighted mix of the two reactions.
    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const std::size_t end = start + static_cast<std::size_t>(blocks_[b].n);
        if (i < end || b + 1 == blocks_.size()) {
            const bool zone = blocks_[b].is_zone;
            if (i == start && b > 0 && blocks_[b - 1].is_zone != zone) {
                const auto& lb = blocks_[b - 1];
                const double a = (lb.x_hi - lb.x_lo) / lb.n;
                const double c = (blocks_[b].x_hi - blocks_[b].x_lo) / blocks_[b].n;
                const double rl = lb.is_zone ? (pair_.f_poly.empty() ? pair_.f(u) : horner(pair_.f_poly, u))
                                             : (pair_.g_poly.empty() ? pair_.g(u) : horner(pair_.g_poly, u));
                const double rr = zone ? (pair_.f_poly.empty() ? pair_.f(u) : horner(pair_.f_poly, u))
                                       : (pair_.g_poly.empty() ? pair_.g(u) : horner(pair_.g_poly, u));
                return (a * rl + c * rr) / (a + c);
            }
            if (zone) return pair_.f_poly.empty() ? pair_.f(u) : horner(pair_.f_poly, u);
            return pair_.g_poly.empty() ? pair_.g(u) : horner(pair_.g_poly, u);
        }
        start = end;
    }
    return 0.0;
}

void Simulator::regrid_tail() {
    auto& tail = blocks_.back();
    const double s = h_ - tail.x_lo;
    if (s / tail.n <= 2.0 * cfg_.dx_target) {
        tail.x_hi = h_;
        return;
    }
    const int n_new = std::max(2, static_cast<int>(std::ceil(s / cfg_.dx_target)));
    const std::size_t start = u_.size() - 1 - static_cast<std::size_t>(tail.n);
    std::vector<double> old(u_.begin() + start, u_.end());
    std::vector<double> fresh(static_cast<std::size_t>(n_new) + 1);
    for (int i = 0; i <= n_new; ++i)
        fresh[i] = interp_uniform_cubic(old, tail.n, static_cast<double>(i) / n_new);
    fresh.front() = old.front();
    fresh.back() = 0.0;
    u_.resize(start);
    u_.insert(u_.end(), fresh.begin(), fresh.end());
    tail.n = n_new;
    tail.x_hi = h_;
}

void Simulator::step() {
    if (finished()) return;

    const double grad = front_gradient();
    const double hdot = std::max(0.0, -cfg_.mu * grad);
    const double h_new = h_ + dt_ * hdot;
    const double edge = layout_.right_edge();
    if (h_new - edge < cfg_.h_floor) {
        traj_.front_collapsed = true;
        traj_.diagnostic = "front collapsed to the zone edge";
        maybe_snapshot(true);
        return;
    }
    h_ = h_new;
    regrid_tail();

    const std::size_t N = u_.size() - 1;  // Dirichlet node excluded from the solve
    dl_.assign(N, 0.0);
    dd_.assign(N, 0.0);
    du_.assign(N, 0.0);
    rhs_.assign(N, 0.0);

    std::size_t start = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& blk = blocks_[b];
        const double len = blk.mapped ? (h_ - blk.x_lo) : (blk.x_hi - blk.x_lo);
        const double delta = len / blk.n;
        const std::size_t end = start + static_cast<std::size_t>(blk.n);

        // Left node of this block.
        if (b == 0) {
            // Neumann at x = 0 (ghost reflection).
            dd_[0] = 1.0 + 2.0 * dt_ / (delta * delta);
            du_[0] = -2.0 * dt_ / (delta * delta);
        } else {
            const auto& lb = blocks_[b - 1];
            const double a = (lb.x_hi - lb.x_lo) / lb.n;
            const double c = delta;
            const std::size_t j = start;
            dl_[j] = -dt_ * 2.0 / (a * (a + c));
            du_[j] = -dt_ * 2.0 / (c * (a + c));
            dd_[j] = 1.0 + dt_ * 2.0 / (a * c);
        }
        // Interior nodes.
        for (std::size_t i = start + 1; i < end; ++i) {
            const double diff = dt_ / (delta * delta);
            double adv = 0.0;
            if (blk.mapped) {
                const double y = static_cast<double>(i - start) / blk.n;
                adv = dt_ * y * hdot / (2.0 * delta);
            }
            dl_[i] = -(diff - adv);
            dd_[i] = 1.0 + 2.0 * diff;
            du_[i] = -(diff + adv);
            if (i == N - 1) du_[i] = 0.0;  // multiplies u(h) = 0
        }
        start = end;
    }
    for (std::size_t i = 0; i < N; ++i) rhs_[i] = u_[i] + dt_ * reaction_at(i, u_[i]);

    num::solve_tridiagonal(dl_, dd_, du_, rhs_);
    for (std::size_t i = 0; i < N; ++i) u_[i] = rhs_[i];
    u_[N] = 0.0;

    t_ += dt_;
    ++step_count_;

    const double cap = std::max(1.0, traj_.sigma) * 4.0 + 4.0;
    double smax = 0;
    for (double v : u_) smax = std::max(smax, std::abs(v));
    if (!std::isfinite(smax) || smax > cap) {
        traj_.aborted = true;
        traj_.diagnostic = "instability: sup |u| = " + std::to_string(smax);
    }

    record_step();
    maybe_snapshot(false);
}

void Simulator::record_step() {
    traj_.ts.push_back(t_);
    traj_.hs.push_back(h_);
}

void Simulator::maybe_snapshot(bool force) {
    if (!force && (step_count_ % cfg_.resolved_snapshot_every() != 0)) return;
    if (!traj_.snapshots.empty() && traj_.snapshots.back().t == t_) return;
    traj_.snapshots.push_back({t_, current_profile()});
}

Profile Simulator::current_profile() const {
    Profile p;
    p.xs.reserve(u_.size());
    p.us = u_;
    for (const auto& blk : blocks_) {
        const double hi = blk.mapped ? h_ : blk.x_hi;
        for (int i = 0; i < blk.n; ++i) p.xs.push_back(blk.x_lo + (hi - blk.x_lo) * i / blk.n);
    }
    p.xs.push_back(h_);
    return p;
}

double Simulator::sup_u() const {
    double m = 0;
    for (double v : u_) m = std::max(m, v);
    return m;
}

bool Simulator::finished() const {
    return traj_.aborted || traj_.front_collapsed || t_ >= cfg_.t_max - 0.5 * dt_;
}

void Simulator::advance(double t_target) {
    const double tt = std::min(t_target, cfg_.t_max);
    while (!finished() && t_ < tt - 0.5 * dt_) step();
    if (finished()) maybe_snapshot(true);
}

Trajectory Simulator::take_trajectory() {
    maybe_snapshot(true);
    return std::move(traj_);
}

Trajectory simulate(const ZoneLayout& layout, const ReactionPair& pair, const InitialData& init,
                    const SolverConfig& cfg) {
    Simulator sim(layout, pair, init, cfg);
    sim.advance(cfg.t_max);
    return sim.take_trajectory();
}

double front_speed_estimate(const Trajectory& traj, double window_fraction) {
    if (!(window_fraction > 0 && window_fraction <= 1))
        throw UsageError("front_speed_estimate: window_fraction must lie in (0,1]");
    const std::size_t n = traj.ts.size();
    const auto i0 = static_cast<std::size_t>(std::floor(n * (1.0 - window_fraction)));
    if (n - i0 < 50) throw UsageError("front_speed_estimate: window holds fewer than 50 samples");
    return num::least_squares_slope(traj.ts, traj.hs, i0, n);
}

std::vector<std::pair<double, double>> profile_error_vs_semiwave(const Trajectory& traj,
                                                                 const SemiWave& sw) {
    if (std::abs(sw.mu - traj.config.mu) > 1e-12)
        throw UsageError("profile_error_vs_semiwave: semi-wave mu does not match the run");
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.snapshots.size());
    for (const auto& snap : traj.snapshots) {
        const double h = snap.prof.xs.back();
        double err = 0;
        for (std::size_t i = 0; i < snap.prof.xs.size(); ++i) {
            const double z = h - snap.prof.xs[i];
            const double q = (z >= sw.profile.xs.back()) ? 1.0 : sw.profile.eval(z);
            err = std::max(err, std::abs(snap.prof.us[i] - q));
        }
        out.emplace_back(snap.t, err);
    }
    return out;
}

}  // namespace fbrd
