#include <doctest.h>

#include "bfl/phase.hpp"

#include <cmath>

using namespace bfl;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("chart conversions are the literal formulas") {
    const PhasePoint p(0.0, pi / 2);
    CHECK(to_chart(p, Chart::W).second == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(to_chart(p, Chart::Y).second == doctest::Approx(0.0).epsilon(1e-15));

    const PhasePoint q(0.0, pi / 3);
    CHECK(to_chart(q, Chart::W).second == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(to_chart(q, Chart::Y).second == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

    const PhasePoint r(0.0, pi / 4);
    CHECK(to_chart(r, Chart::W).second == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(to_chart(r, Chart::Y).second == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("round trip to_chart / from_chart is the identity") {
    for (double theta : {0.3, 1.0, pi / 2, 2.2, 2.9}) {
        for (auto chart : {Chart::Theta, Chart::W, Chart::Y}) {
            const PhasePoint p(1.7, theta);
            const auto [s, v] = to_chart(p, chart);
            const PhasePoint back = from_chart(s, v, chart);
            CHECK(std::abs(back.theta - theta) < 1e-14);
        }
    }
}

TEST_CASE("y chart identity y sqrt(1-w^2) = w") {
    for (int i = 1; i <= 31; ++i) {
        const PhasePoint p(0.0, pi * i / 32);
        const double w = p.w(), y = p.y();
        CHECK(std::abs(y * std::sqrt(1.0 - w * w) - w) < 1e-14);
    }
}

TEST_CASE("line from phase on the unit circle") {
    SupportCurve circle(TrigPoly::constant(Rational(1)));
    SUBCASE("normal line at s=0") {
        const EuclideanLine l = line_from_phase(circle, PhasePoint(0.0, pi / 2));
        CHECK(std::abs(l.base.x - 1.0) < 1e-14);
        CHECK(std::abs(l.base.y) < 1e-14);
        CHECK(std::abs(l.direction.x - 1.0) < 1e-14);
        CHECK(std::abs(l.direction.y) < 1e-14);
    }
    SUBCASE("theta = pi/4 is the tangent rotated toward the outward normal") {
        const EuclideanLine l = line_from_phase(circle, PhasePoint(0.0, pi / 4));
        // tangent (0,1), normal (1,0): direction = (sin, cos)(pi/4)
        CHECK(l.direction.x == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
        CHECK(l.direction.y == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    }
}

TEST_CASE("line from phase on the germ x^2") {
    GermCurve g(Poly::monomial(2), 1.0);
    const EuclideanLine l = line_from_phase(g, PhasePoint(0.0, pi / 2));
    CHECK(std::abs(l.base.x) < 1e-14);
    CHECK(std::abs(l.base.y) < 1e-14);
    CHECK(std::abs(l.direction.x) < 1e-14);
    CHECK(l.direction.y == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("phase from line selects the last intersection") {
    SupportCurve circle(TrigPoly::constant(Rational(1)));
    SUBCASE("rightward diameter charts at (1,0)") {
        const PhasePoint p = phase_from_line(circle, EuclideanLine({-2.0, 0.0}, {1.0, 0.0}));
        CHECK(std::abs(p.s) < 1e-12);
        CHECK(p.theta == doctest::Approx(pi / 2).epsilon(1e-12));
    }
    SUBCASE("tangent line reports tangency") {
        CHECK_THROWS_AS(phase_from_line(circle, EuclideanLine({-2.0, 1.0}, {1.0, 0.0})),
                        GeometryError);
        try {
            phase_from_line(circle, EuclideanLine({-2.0, 1.0}, {1.0, 0.0}));
        } catch (const GeometryError& e) {
            CHECK(e.kind() == GeometryError::Kind::Tangency);
        }
    }
    SUBCASE("missing line reports no intersection") {
        try {
            phase_from_line(circle, EuclideanLine({-2.0, 1.5}, {1.0, 0.0}));
            CHECK(false);
        } catch (const GeometryError& e) {
            CHECK(e.kind() == GeometryError::Kind::NoIntersection);
        }
    }
}

TEST_CASE("phase round trip on a 32x32 grid") {
    TrigPoly h = TrigPoly::constant(Rational(1));
    h.set_cos(2, Rational(1, 10));
    SupportCurve c(h);
    const double L = c.total_length();
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
        for (int j = 1; j <= 32; ++j) {
            const PhasePoint p(L * i / 32, pi / 6 + (j - 1) * (2 * pi / 3) / 31);
            const PhasePoint q = phase_from_line(c, line_from_phase(c, p));
            double ds = std::fmod(q.s - p.s, L);
            if (ds > L / 2) ds -= L;
            if (ds < -L / 2) ds += L;
            worst = std::max(worst, std::max(std::abs(ds), std::abs(q.theta - p.theta)));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("symplectic product pairing and antisymmetry") {
    const PhaseTangent u{1.0, 0.0}, v{0.0, 1.0};
    CHECK(symplectic_product(u, v) == -1.0);
    CHECK(symplectic_product(v, u) == 1.0);
    CHECK(symplectic_product(u, u) == 0.0);

    // Chart-change consistency at theta = pi/3: dw = -sin(theta) dtheta.
    const double theta = pi / 3;
    const PhaseTangent a_st{0.7, -0.4}, b_st{-0.2, 1.1};  // (ds, dtheta) pairs
    const PhaseTangent a_sw{a_st.ds, -std::sin(theta) * a_st.dw};
    const PhaseTangent b_sw{b_st.ds, -std::sin(theta) * b_st.dw};
    CHECK(std::abs(symplectic_product(a_sw, b_sw) - symplectic_product_theta(theta, a_st, b_st)) <
          1e-12);
}

TEST_CASE("symplectic product is bilinear to roundoff") {
    const PhaseTangent u{0.3, -1.2}, v{0.9, 0.4};
    const PhaseTangent u2{0.6, -2.4};
    CHECK(std::abs(symplectic_product(u2, v) - 2.0 * symplectic_product(u, v)) < 1e-15);
}
