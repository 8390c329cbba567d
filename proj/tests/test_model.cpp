#include <doctest.h>

#include <cmath>

#include "fbrd/model.hpp"

using namespace fbrd;

namespace {

// Test-local oracle: fixed composite Simpson, independent of the adaptive
// quadrature inside ReactionPair.
double simpson_oracle(const num::Fn1& f, double a, double b, int n = 2000) {
    double s = f(a) + f(b);
    const double h = (b - a) / (2 * n);
    for (int i = 1; i < 2 * n; ++i) s += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Closed-form theta* for the cubic family: int_0^a u(u-t)(1-u) du = 0 reduces
// to 3a^2 - 4(1+t)a + 6t = 0; the relevant root lies in (t, 1).
double cubic_theta_star_oracle(double t) {
    const double b = 4.0 * (1.0 + t);
    return (b - std::sqrt(b * b - 72.0 * t)) / 6.0;
}

}  // namespace

TEST_CASE("cubic pair: derived scalars at theta = 0.25") {
    const auto p = make_cubic_pair(0.25);
    CHECK(p.fp0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.gp0 == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(p.theta == doctest::Approx(0.25));
    const double oracle = cubic_theta_star_oracle(0.25);
    CHECK(oracle == doctest::Approx(0.3923747814892349).epsilon(1e-12));
    CHECK(p.theta_star == doctest::Approx(oracle).epsilon(1e-9));
    // Cross-check theta* against plain quadrature of int_0^a g.
    CHECK(std::abs(simpson_oracle(p.g, 0.0, p.theta_star)) < 1e-10);
}

TEST_CASE("cubic pair: theta* at theta = 0.4 and the balanced limit") {
    const auto p = make_cubic_pair(0.4);
    // Root of 3a^2 - 5.6a + 2.4 in (0.4, 1) is exactly 2/3.
    CHECK(cubic_theta_star_oracle(0.4) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(p.theta_star == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(std::abs(simpson_oracle(p.g, 0.0, p.theta_star)) < 1e-10);

    // theta -> 1/2 drives theta* -> 1 (the balanced case).
    CHECK(make_cubic_pair(0.499).theta_star > 0.95);
    CHECK_THROWS_AS(make_cubic_pair(0.5), ValidationError);
    CHECK_THROWS_AS(make_cubic_pair(0.6), ValidationError);
}

TEST_CASE("theta_star: residual and bracket contract") {
    for (double t : {0.1, 0.2, 0.3, 0.45}) {
        const auto p = make_cubic_pair(t);
        const double a = theta_star(p);
        CHECK(a > p.theta);
        CHECK(a < 1.0);
        CHECK(std::abs(p.G(a)) <= 1e-10);
    }
}

TEST_CASE("validate: cubic family passes across the admissible theta grid") {
    for (double t = 0.05; t < 0.46; t += 0.05) {
        const auto rep = validate(make_cubic_pair(t), 2000);
        INFO("theta = ", t);
        CHECK(rep.all_pass);
    }
}

TEST_CASE("validate: g = f violates (H)") {
    auto p = make_poly_pair({0, 1, -1}, {0, 1, -1});
    const auto rep = validate(p, 1000);
    CHECK_FALSE(rep.all_pass);
    bool h_failed = false;
    for (const auto& c : rep.checks)
        if (c.name.find("g(u) < f(u)") != std::string::npos) h_failed = !c.pass;
    CHECK(h_failed);
}

TEST_CASE("validate: cubic-shaped g with theta = 0.6 fails the area condition") {
    // g = u(u-0.6)(1-u): int_0^1 g = (1-2*0.6)/12 < 0.
    auto p = make_poly_pair({0, 1, -1}, {0, -0.6, 1.6, -1});
    CHECK(simpson_oracle(p.g, 0.0, 1.0) < 0.0);
    const auto rep = validate(p, 1000);
    CHECK_FALSE(rep.all_pass);
    bool area_failed = false;
    for (const auto& c : rep.checks)
        if (c.name.find("int_0^1 g > 0") != std::string::npos) area_failed = !c.pass;
    CHECK(area_failed);
    CHECK_THROWS_AS(theta_star(p), ValidationError);
}

TEST_CASE("validate: precondition on sample count") {
    CHECK_THROWS_AS(validate(make_cubic_pair(0.25), 50), UsageError);
}

TEST_CASE("accumulated growth G: negative below theta*, positive above") {
    const auto p = make_cubic_pair(0.25);
    for (int i = 1; i <= 40; ++i) {
        const double a = p.theta_star * i / 41.0;
        CHECK(simpson_oracle(p.g, 0.0, a) < 0.0);
    }
    for (int i = 1; i <= 40; ++i) {
        const double a = p.theta_star + (1.0 - p.theta_star) * i / 40.0;
        CHECK(simpson_oracle(p.g, 0.0, a) > 0.0);
    }
}

TEST_CASE("theta* is monotone increasing in theta for the cubic family") {
    double prev = 0;
    for (double t = 0.05; t < 0.5; t += 0.025) {
        const double a = make_cubic_pair(t).theta_star;
        CHECK(a > prev);
        prev = a;
    }
}

TEST_CASE("poly pair matches the cubic built-in") {
    const auto c = make_cubic_pair(0.25);
    const auto p = make_poly_pair({0, 1, -1}, {0, -0.25, 1.25, -1});
    CHECK(p.theta == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(p.theta_star == doctest::Approx(c.theta_star).epsilon(1e-10));
    CHECK(p.gp0 == doctest::Approx(-0.25));
    for (double u = 0; u <= 2.0; u += 0.17) {
        CHECK(p.f(u) == doctest::Approx(c.f(u)).epsilon(1e-13));
        CHECK(p.g(u) == doctest::Approx(c.g(u)).epsilon(1e-13));
    }
}

TEST_CASE("zone layouts enforce their geometry") {
    const auto con = ZoneLayout::connected(1.5);
    CHECK(con.L1 == 0.0);
    CHECK(con.length() == doctest::Approx(1.5));
    CHECK(con.right_edge() == doctest::Approx(1.5));
    const auto sep = ZoneLayout::separated(1.0, 2.5);
    CHECK(sep.length() == doctest::Approx(1.5));
    CHECK(sep.right_edge() == doctest::Approx(2.5));
    CHECK_THROWS_AS(ZoneLayout::connected(0.0), UsageError);
    CHECK_THROWS_AS(ZoneLayout::separated(0.0, 1.0), UsageError);
    CHECK_THROWS_AS(ZoneLayout::separated(2.0, 1.0), UsageError);
}

TEST_CASE("initial data: cosine profile is in the admissible class") {
    const auto d = InitialData::cosine(2.0, 1.0);
    CHECK(d.h0 == doctest::Approx(2.0));
    CHECK(d.phi.back() == 0.0);
    CHECK(d.eval(0.0) == doctest::Approx(1.0));
    CHECK(d.eval(1.0) == doctest::Approx(std::cos(std::acos(-1.0) / 4)).epsilon(1e-6));
    // Sampled round-trip through the validating factory.
    CHECK_NOTHROW(InitialData::sampled(d.xs, d.phi, 2.0));
    // A profile with phi'(0) != 0 is rejected.
    std::vector<double> xs, ph;
    for (int i = 0; i <= 100; ++i) {
        const double x = 2.0 * i / 100;
        xs.push_back(x);
        ph.push_back(2.0 - x);
    }
    ph.back() = 0.0;
    CHECK_THROWS_AS(InitialData::sampled(xs, ph, 1.0), ValidationError);
}
