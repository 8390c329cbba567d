#include "fbrd/model.hpp"

#include <algorithm>
#include <cmath>

namespace fbrd {

namespace {

double eval_poly(const std::vector<double>& c, double u) {
    double r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * u + c[i];
    return r;
}

std::vector<double> derive_poly(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    if (d.empty()) d.push_back(0.0);
    return d;
}

double sampled_sup(const num::Fn1& f, double a, double b, int n) {
    double m = 0;
    for (int i = 0; i <= n; ++i) {
        const double u = a + (b - a) * i / n;
        m = std::max(m, std::abs(f(u)));
    }
    return m;
}

}  // namespace

double ReactionPair::F(double v) const { return num::adaptive_simpson(f, 0.0, v, 1e-12); }
double ReactionPair::G(double v) const { return num::adaptive_simpson(g, 0.0, v, 1e-12); }

double theta_star(const ReactionPair& pair) {
    const double th = pair.theta;
    auto Gfn = [&](double a) { return pair.G(a); };
    // G < 0 on (0, theta], G(1) > 0 under the area condition.
    double lo = th, hi = 1.0;
    if (!(Gfn(lo) < 0.0) || !(Gfn(hi) > 0.0))
        throw ValidationError("theta_star: root of int_0^a g not bracketed in (theta,1)");
    const double a = num::brent(Gfn, lo, hi, 1e-15);
    if (std::abs(Gfn(a)) > 1e-10)
        throw NumericalError("theta_star: residual above 1e-10");
    return a;
}

ReactionPair make_cubic_pair(double theta) {
    if (!(theta > 0.0 && theta < 0.5))
        throw ValidationError("make_cubic_pair: theta must lie in (0, 1/2) so int_0^1 g > 0");
    ReactionPair p;
    p.f = [](double u) { return u * (1.0 - u); };
    p.g = [theta](double u) { return u * (u - theta) * (1.0 - u); };
    p.fp0 = 1.0;
    p.fp1 = -1.0;
    p.gp0 = -theta;
    p.gp1 = theta - 1.0;
    p.theta = theta;
    p.name = "cubic(theta=" + std::to_string(theta) + ")";
    p.f_poly = {0.0, 1.0, -1.0};
    p.g_poly = {0.0, -theta, 1.0 + theta, -1.0};
    // |f'| <= 3 on [0,2]; g' is cubic, bound it by sampling.
    p.lip_f = 3.0;
    auto gp = [theta](double u) { return -3 * u * u + 2 * (1 + theta) * u - theta; };
    p.lip_g = sampled_sup(gp, 0.0, 2.0, 4000);
    p.theta_star = theta_star(p);
    return p;
}

ReactionPair make_poly_pair(const std::vector<double>& f_coeffs,
                            const std::vector<double>& g_coeffs) {
    if (f_coeffs.empty() || g_coeffs.empty())
        throw UsageError("make_poly_pair: empty coefficient list");
    ReactionPair p;
    p.f = [f_coeffs](double u) { return eval_poly(f_coeffs, u); };
    p.g = [g_coeffs](double u) { return eval_poly(g_coeffs, u); };
    const auto fd = derive_poly(f_coeffs), gd = derive_poly(g_coeffs);
    p.fp0 = eval_poly(fd, 0.0);
    p.fp1 = eval_poly(fd, 1.0);
    p.gp0 = eval_poly(gd, 0.0);
    p.gp1 = eval_poly(gd, 1.0);
    p.lip_f = sampled_sup([&](double u) { return eval_poly(fd, u); }, 0.0, 2.0, 4000);
    p.lip_g = sampled_sup([&](double u) { return eval_poly(gd, u); }, 0.0, 2.0, 4000);
    p.name = "poly";
    p.f_poly = f_coeffs;
    p.g_poly = g_coeffs;

    // theta: first interior sign change of g from negative to positive. A pair
    // without one is left with NaN markers so validate() can report the shape
    // failures instead of refusing construction.
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const int n = 4000;
    p.theta = nan;
    double prev = p.g(1e-9);
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        const double cur = p.g(std::min(u, 1.0 - 1e-12));
        if (prev < 0 && cur >= 0) {
            p.theta = num::brent(p.g, static_cast<double>(i - 1) / n, u, 1e-14);
            break;
        }
        prev = cur;
    }
    p.theta_star = nan;
    if (std::isfinite(p.theta)) {
        try {
            p.theta_star = theta_star(p);
        } catch (const ValidationError&) {
        }
    }
    return p;
}

ValidationReport validate(const ReactionPair& pair, int n_samples) {
    if (n_samples < 100) throw UsageError("validate: n_samples must be >= 100");
    ValidationReport rep;
    auto add = [&rep](HypothesisCheck c) {
        rep.all_pass = rep.all_pass && c.pass;
        rep.checks.push_back(std::move(c));
    };
    const double tol = 1e-9;

    {
        HypothesisCheck c{"f(0)=f(1)=0, f'(0)>0, f'(1)<0"};
        if (std::abs(pair.f(0.0)) > tol) c = {c.name, false, 0.0, "f(0) != 0"};
        else if (std::abs(pair.f(1.0)) > tol) c = {c.name, false, 1.0, "f(1) != 0"};
        else if (!(pair.fp0 > 0)) c = {c.name, false, 0.0, "f'(0) <= 0"};
        else if (!(pair.fp1 < 0)) c = {c.name, false, 1.0, "f'(1) >= 0"};
        add(std::move(c));
    }
    {
        HypothesisCheck c{"(1-u) f(u) > 0 on (0,1) u (1,2)"};
        for (int i = 1; i < n_samples; ++i) {
            const double u = 2.0 * i / n_samples;
            if (std::abs(u - 1.0) < 1e-6) continue;
            if ((1.0 - u) * pair.f(u) <= 0) {
                c = {c.name, false, u, "sign violation"};
                break;
            }
        }
        add(std::move(c));
    }
    {
        HypothesisCheck c{"g(0)=g(theta)=g(1)=0, g'(0)<0, g'(1)<0"};
        if (std::abs(pair.g(0.0)) > tol) c = {c.name, false, 0.0, "g(0) != 0"};
        else if (std::abs(pair.g(pair.theta)) > tol) c = {c.name, false, pair.theta, "g(theta) != 0"};
        else if (std::abs(pair.g(1.0)) > tol) c = {c.name, false, 1.0, "g(1) != 0"};
        else if (!(pair.gp0 < 0)) c = {c.name, false, 0.0, "g'(0) >= 0"};
        else if (!(pair.gp1 < 0)) c = {c.name, false, 1.0, "g'(1) >= 0"};
        add(std::move(c));
    }
    {
        HypothesisCheck c{"sign pattern of g on (0,theta), (theta,1), (1,2)"};
        for (int i = 1; i < n_samples; ++i) {
            const double u = 2.0 * i / n_samples;
            double want = 0;
            if (u < pair.theta) want = -1;
            else if (u > pair.theta && u < 1.0) want = 1;
            else if (u > 1.0) want = -1;
            if (std::abs(u - pair.theta) < 2e-3 || std::abs(u - 1.0) < 2e-3 || want == 0) continue;
            if (want * pair.g(u) <= 0) {
                c = {c.name, false, u, "sign violation"};
                break;
            }
        }
        add(std::move(c));
    }
    {
        HypothesisCheck c{"int_0^1 g > 0"};
        const double I = pair.G(1.0);
        if (!(I > 0)) c = {c.name, false, 1.0, "integral = " + std::to_string(I)};
        add(std::move(c));
    }
    {
        HypothesisCheck c{"g(u) < f(u) on (0,1)"};
        for (int i = 1; i < n_samples; ++i) {
            const double u = static_cast<double>(i) / n_samples;
            if (u >= 1.0) break;
            if (!(pair.g(u) < pair.f(u))) {
                c = {c.name, false, u, "g >= f"};
                break;
            }
        }
        add(std::move(c));
    }
    {
        // Sampled Lipschitz estimate must not exceed the declared bounds.
        HypothesisCheck c{"global Lipschitz bounds hold on [0,2]"};
        const int n = std::min(n_samples, 4000);
        for (int i = 0; i < n; ++i) {
            const double u = 2.0 * i / n, v = 2.0 * (i + 1) / n;
            const double sf = std::abs(pair.f(v) - pair.f(u)) / (v - u);
            const double sg = std::abs(pair.g(v) - pair.g(u)) / (v - u);
            if (sf > pair.lip_f * (1 + 1e-6) || sg > pair.lip_g * (1 + 1e-6)) {
                c = {c.name, false, u, "difference quotient exceeds bound"};
                break;
            }
        }
        add(std::move(c));
    }
    {
        HypothesisCheck c{"int_0^{theta*} g = 0 with theta* in (theta,1)"};
        if (!(pair.theta_star > pair.theta && pair.theta_star < 1.0))
            c = {c.name, false, pair.theta_star, "theta* outside (theta,1)"};
        else if (std::abs(pair.G(pair.theta_star)) > 1e-10)
            c = {c.name, false, pair.theta_star, "residual above 1e-10"};
        add(std::move(c));
    }
    return rep;
}

ZoneLayout ZoneLayout::connected(double L) {
    if (!(L > 0)) throw UsageError("ZoneLayout::connected: L must be positive");
    return {Kind::Connected, 0.0, L};
}

ZoneLayout ZoneLayout::separated(double L1, double L2) {
    if (!(L1 > 0 && L2 > L1)) throw UsageError("ZoneLayout::separated: need 0 < L1 < L2");
    return {Kind::Separated, L1, L2};
}

double InitialData::eval(double x) const { return num::interp_linear(xs, phi, x); }

InitialData InitialData::cosine(double h0, double sigma, int n) {
    if (!(h0 > 0)) throw UsageError("InitialData: h0 must be positive");
    if (!(sigma >= 0)) throw UsageError("InitialData: sigma must be >= 0");
    InitialData d;
    d.h0 = h0;
    d.sigma = sigma;
    d.xs.resize(n);
    d.phi.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n; ++i) {
        const double x = h0 * i / (n - 1);
        d.xs[i] = x;
        d.phi[i] = std::cos(pi * x / (2.0 * h0));
    }
    d.phi.back() = 0.0;
    return d;
}

InitialData InitialData::sampled(std::vector<double> xs, std::vector<double> phi, double sigma) {
    if (xs.size() != phi.size() || xs.size() < 4)
        throw UsageError("InitialData::sampled: need matching arrays with >= 4 samples");
    if (!(sigma >= 0)) throw UsageError("InitialData: sigma must be >= 0");
    InitialData d;
    d.h0 = xs.back();
    d.sigma = sigma;
    d.xs = std::move(xs);
    d.phi = std::move(phi);
    if (!(d.xs.front() == 0.0 && d.h0 > 0))
        throw ValidationError("InitialData: samples must span [0, h0]");
    double peak = 0;
    for (std::size_t i = 0; i + 1 < d.xs.size(); ++i) {
        if (!(d.xs[i + 1] > d.xs[i]))
            throw ValidationError("InitialData: xs must be strictly increasing");
        peak = std::max(peak, std::abs(d.phi[i]));
    }
    if (std::abs(d.phi.back()) > 1e-9 * std::max(1.0, peak))
        throw ValidationError("InitialData: phi(h0) must vanish");
    for (std::size_t i = 1; i + 1 < d.phi.size(); ++i)
        if (!(d.phi[i] > 0)) throw ValidationError("InitialData: phi must be positive inside (0,h0)");
    // phi'(0) = 0 via a 3-point one-sided difference.
    const double dx1 = d.xs[1] - d.xs[0], dx2 = d.xs[2] - d.xs[0];
    const double dphi0 = (-d.phi[0] * (dx1 + dx2) / (dx1 * dx2) +
                          d.phi[1] * dx2 / (dx1 * (dx2 - dx1)) -
                          d.phi[2] * dx1 / (dx2 * (dx2 - dx1)));
    if (std::abs(dphi0) > 1e-3 * std::max(1.0, peak / d.h0))
        throw ValidationError("InitialData: phi'(0) must vanish");
    return d;
}

}  // namespace fbrd
