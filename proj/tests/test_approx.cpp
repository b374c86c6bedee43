#include <doctest.h>

#include "bfl/approx.hpp"

#include <cmath>

using namespace bfl;

namespace {
const double pi = std::numbers::pi;

GradedElement film_ham(const TrigPoly& f) { return perline_hamiltonian(f).as_element(); }

GridSpec small_grid() {
    GridSpec g;
    g.ns = 4;
    g.ntheta = 4;
    g.theta_min = pi / 3;
    g.theta_max = 2 * pi / 3;
    return g;
}
}  // namespace

TEST_CASE("power scheme composes floor(t/eps) reflection ratios") {
    SupportCurve circle(TrigPoly::constant(Rational(1)));
    auto film = std::make_shared<DeformedCurve>(circle, TrigPoly::constant(Rational(1)), 1e-2);
    const Schedule s = power_schedule(film, 0.5);
    CHECK(s.total_steps() == 50);
    SUBCASE("t = 0 is the identity") {
        const PhasePoint p(0.3, pi / 3);
        const PhasePoint q = power_scheme(*film, 0.0, p);
        CHECK(q.s == p.s);
        CHECK(q.theta == p.theta);
    }
    SUBCASE("schedule apply equals the direct loop") {
        const PhasePoint p(0.3, pi / 3);
        const PhasePoint a = power_scheme(*film, 0.5, p);
        const PhasePoint b = s.apply(p);
        CHECK(a.s == b.s);
        CHECK(a.theta == b.theta);
    }
}

TEST_CASE("power scheme converges at first order to the thin-film flow") {
    SupportCurve circle(TrigPoly::constant(Rational(1)));
    const TrigPoly f = TrigPoly::cosine(1);
    const GradedElement ham = film_ham(f);
    const double t = 0.5;
    std::vector<std::pair<double, Schedule>> rungs;
    for (double eps : {1e-2, 5e-3, 2.5e-3})
        rungs.emplace_back(eps, power_schedule(std::make_shared<DeformedCurve>(circle, f, eps), t));
    const auto rep = run_ladder(
        rungs, [&](const PhasePoint& p) { return flow(ham, t, p); }, small_grid(), kTwoPi);
    CHECK(rep.fit.monotone);
    CHECK(rep.fit.slope > 0.9);
    CHECK(rep.fit.slope < 1.1);
}

TEST_CASE("sum scheme basics") {
    const GradedElement a = film_ham(TrigPoly::constant(Rational(1)));
    const GradedElement zero(Ring::CircleTrig);
    const FlowMap fa(a, 0.0), fzero(zero, 0.0);
    const PhasePoint p(0.2, pi / 3);
    SUBCASE("N = 1 is literally g^t_a after g^t_b") {
        const GradedElement b = film_ham(TrigPoly::cosine(1));
        const FlowMap fb(b, 0.0);
        const PhasePoint lhs = sum_scheme(fa, fb, 0.7, 1, p);
        const PhasePoint rhs = flow(a, 0.7, flow(b, 0.7, p));
        CHECK(lhs.s == doctest::Approx(rhs.s).epsilon(1e-14));
        CHECK(lhs.theta == doctest::Approx(rhs.theta).epsilon(1e-14));
    }
    SUBCASE("zero second Hamiltonian reduces to the plain flow") {
        const PhasePoint lhs = sum_scheme(fa, fzero, 0.9, 7, p);
        const PhasePoint rhs = flow(a, 0.9, p);
        CHECK(std::abs(wrap_diff(lhs.s - rhs.s, kTwoPi)) < 1e-10);
        CHECK(std::abs(lhs.w() - rhs.w()) < 1e-10);
    }
}

TEST_CASE("sum scheme error decays like 1/N toward the sum flow") {
    const GradedElement v = film_ham(TrigPoly::constant(Rational(1)));
    const GradedElement w = film_ham(TrigPoly::cosine(1));
    GradedElement sum = v;
    sum += w;
    const double t = 0.5;
    std::vector<std::pair<double, Schedule>> rungs;
    for (int n : {8, 16, 32}) rungs.emplace_back(1.0 / n, sum_schedule(v, w, t, n));
    const auto rep = run_ladder(
        rungs, [&](const PhasePoint& p) { return flow(sum, t, p); }, small_grid(), kTwoPi);
    CHECK(rep.fit.monotone);
    CHECK(rep.fit.slope > 0.9);
    CHECK(rep.fit.slope < 1.1);
}

TEST_CASE("commutator scheme basics") {
    const GradedElement a = film_ham(TrigPoly::sine(1));
    const FlowMap fa(a, 0.0);
    const PhasePoint p(0.4, pi / 2);
    SUBCASE("equal flows commute to the identity for any N") {
        for (int n : {1, 3, 5}) {
            const PhasePoint q = commutator_scheme(fa, fa, 0.8, n, p);
            CHECK(std::abs(wrap_diff(q.s - p.s, kTwoPi)) < 1e-9);
            CHECK(std::abs(q.w() - p.w()) < 1e-9);
        }
    }
    SUBCASE("t = 0 is the identity") {
        const PhasePoint q = commutator_scheme(fa, fa, 0.0, 4, p);
        CHECK(q.s == p.s);
        CHECK(q.theta == p.theta);
    }
    SUBCASE("negative t is rejected") {
        CHECK_THROWS_AS(commutator_scheme(fa, fa, -1.0, 4, p), std::invalid_argument);
    }
}

TEST_CASE("commutator scheme approaches the bracket flow") {
    // sin/cos degree-zero pair; the symbolic bracket is H_{1,4}, whose flow
    // translates s by -4t.
    const GradedElement a = film_ham(TrigPoly::sine(1));
    const GradedElement b = film_ham(TrigPoly::cosine(1));
    const GradedElement br = bracket(a, b);
    const double t = 1.6;
    const auto pts = small_grid().points();
    const PointMap ref = [&](const PhasePoint& p) { return flow(br, t, p); };
    double prev = 1e300;
    for (int n : {4, 8, 16}) {
        const auto rep = run_schedule(commutator_schedule(a, b, t, n), ref, pts, kTwoPi);
        CHECK(rep.sup < prev);
        prev = rep.sup;
    }
    CHECK(prev < 0.1);
}

TEST_CASE("run_schedule of a single flow step against itself") {
    const GradedElement a = film_ham(TrigPoly::cosine(1));
    Schedule s;
    s.steps.emplace_back(FlowStep{a, 0.4, 1});
    const auto rep = run_schedule(
        s, [&](const PhasePoint& p) { return flow(a, 0.4, p); }, small_grid().points(), kTwoPi);
    CHECK(rep.sup < 2e-12);
    CHECK(rep.evaluated == small_grid().points().size());
}

TEST_CASE("schedules compose symplectic maps: defect stays below 1e-5") {
    SupportCurve circle(TrigPoly::constant(Rational(1)));
    const TrigPoly f = TrigPoly::cosine(1);
    auto film = std::make_shared<DeformedCurve>(circle, f, 5e-3);
    Schedule s = power_schedule(film, 0.1);
    s.steps.emplace_back(FlowStep{film_ham(f), 0.2, 1});
    const auto grid = small_grid().points();
    const auto rep = symplectic_defect([&](const PhasePoint& p) { return s.apply(p); }, grid,
                                       kTwoPi, 1e-3);
    CHECK(rep.evaluated == grid.size());
    CHECK(rep.max_defect < 1e-5);
}

TEST_CASE("slope fitting validates its input") {
    CHECK_THROWS_AS(fit_slope({1e-2, 5e-3}, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(fit_slope({1e-2, 5e-3, 0.0}, {1.0, 0.5, 0.25}), std::invalid_argument);
    const auto fit = fit_slope({1e-1, 5e-2, 2.5e-2}, {2e-1, 1e-1, 5e-2});
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.monotone);
}
