#include <doctest.h>

#include "bfl/curve.hpp"

#include <cmath>

using namespace bfl;

namespace {

TrigPoly support_circle() { return TrigPoly::constant(Rational(1)); }

// True support function of a parametric convex curve, recovered as the
// maximal projection onto the direction n(psi) (coarse grid + golden refine).
double envelope_support(const DeformedCurve& c, double psi) {
    const Vec2 n{std::cos(psi), std::sin(psi)};
    double best = -1e300, best_phi = 0.0;
    const int coarse = 2048;
    for (int i = 0; i < coarse; ++i) {
        const double phi = kTwoPi * i / coarse;
        const double v = dot(c.point(phi), n);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    double a = best_phi - kTwoPi / coarse, b = best_phi + kTwoPi / coarse;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = dot(c.point(x1), n), f2 = dot(c.point(x2), n);
    for (int it = 0; it < 90; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = dot(c.point(x2), n);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = dot(c.point(x1), n);
        }
    }
    return std::max(f1, f2);
}

}  // namespace

TEST_CASE("unit circle point and normal at cardinal angles") {
    SupportCurve c(support_circle());
    const Vec2 p0 = c.point(0.0);
    CHECK(p0.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p0.y == doctest::Approx(0.0).epsilon(1e-14));
    const Vec2 n0 = c.outward_normal(0.0);
    CHECK(n0.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n0.y == doctest::Approx(0.0).epsilon(1e-14));

    const Vec2 p1 = c.point(std::numbers::pi / 2);
    CHECK(p1.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(p1.y == doctest::Approx(1.0).epsilon(1e-14));
    const Vec2 n1 = c.outward_normal(std::numbers::pi / 2);
    CHECK(n1.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(n1.y == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("germ x^2 at the origin") {
    GermCurve g(Poly::monomial(2), 1.0);
    const Vec2 p = g.point(0.0);
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
    const Vec2 n = g.outward_normal(0.0);
    CHECK(n.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(n.y == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normal field is unit and orthogonal to the tangent on a grid") {
    TrigPoly h = support_circle();
    h.set_cos(2, Rational(1, 10));
    h.set_sin(3, Rational(1, 20));
    SupportCurve c(h);
    for (int i = 0; i < 256; ++i) {
        const double phi = kTwoPi * i / 256;
        const Vec2 n = c.outward_normal(phi);
        CHECK(std::abs(n.norm() - 1.0) < 1e-14);
        CHECK(std::abs(dot(c.tangent_vector(phi), n)) < 1e-10);
    }
}

TEST_CASE("convexity margin") {
    SUBCASE("circle") {
        SupportCurve c(support_circle());
        CHECK(c.convexity_margin() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("h = 1 + 0.1 cos 2phi has margin 0.7") {
        TrigPoly h = support_circle();
        h.set_cos(2, Rational(1, 10));
        SupportCurve c(h);
        // h + h'' = 1 + 0.1 cos 2phi - 0.4 cos 2phi, minimized at cos = 1
        CHECK(c.convexity_margin() == doctest::Approx(0.7).epsilon(1e-12));
    }
    SUBCASE("h = 1 + 0.5 cos 2phi is rejected as non-convex") {
        TrigPoly h = support_circle();
        h.set_cos(2, Rational(1, 2));
        CHECK_THROWS_AS(SupportCurve{h}, std::invalid_argument);
    }
}

TEST_CASE("arclength of support curves") {
    SUBCASE("unit circle is unit speed") {
        SupportCurve c(support_circle());
        CHECK(c.arclength(std::numbers::pi) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
        CHECK(c.arclength(kTwoPi) == doctest::Approx(kTwoPi).epsilon(1e-14));
    }
    SUBCASE("oscillatory support terms integrate to zero over a full turn") {
        TrigPoly h = support_circle();
        h.set_cos(2, Rational(1, 10));
        SupportCurve c(h);
        CHECK(c.arclength(kTwoPi) == doctest::Approx(kTwoPi).epsilon(1e-13));
    }
    SUBCASE("strictly increasing and invertible on a grid") {
        TrigPoly h = support_circle();
        h.set_cos(2, Rational(1, 10));
        h.set_sin(3, Rational(1, 25));
        SupportCurve c(h);
        double prev = -1.0;
        for (int i = 0; i <= 64; ++i) {
            const double phi = kTwoPi * i / 64;
            const double s = c.arclength(phi);
            CHECK(s > prev);
            prev = s;
            double dphi = std::fmod(c.phi_from_arclength(s) - phi, kTwoPi);
            if (dphi > std::numbers::pi) dphi -= kTwoPi;
            if (dphi < -std::numbers::pi) dphi += kTwoPi;
            CHECK(std::abs(dphi) < 1e-12);
        }
    }
}

TEST_CASE("germ arclength round trip") {
    GermCurve g(Poly::monomial(2, Rational(1, 2)), 1.0);
    for (double x : {-0.8, -0.3, 0.0, 0.2, 0.7}) {
        const double s = g.arclength(x);
        CHECK(g.x_from_arclength(s) == doctest::Approx(x).epsilon(1e-13));
    }
    // Arclength dominates |x| and matches a closed form for g = x^2/2:
    // integral sqrt(1+x^2) = (x sqrt(1+x^2) + asinh x)/2.
    const double x = 0.7;
    const double exact = 0.5 * (x * std::sqrt(1 + x * x) + std::asinh(x));
    CHECK(g.arclength(x) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("deformation of the unit circle") {
    SupportCurve circle(support_circle());
    SUBCASE("f = 1, eps = 0.1 gives the concentric circle of radius 1.1") {
        DeformedCurve d = deform(circle, TrigPoly::constant(Rational(1)), 0.1);
        for (int i = 0; i < 256; ++i) {
            const double phi = kTwoPi * i / 256;
            CHECK(std::abs(d.point(phi).norm() - 1.1) < 1e-12);
        }
    }
    SUBCASE("eps = 0 is pointwise the base curve") {
        TrigPoly f = TrigPoly::cosine(1);
        DeformedCurve d = deform(circle, f, 0.0);
        for (int i = 0; i < 256; ++i) {
            const double phi = kTwoPi * i / 256;
            CHECK((d.point(phi) - circle.point(phi)).norm() < 1e-14);
        }
    }
}

TEST_CASE("deformed support function against the first-order perturbation") {
    // The envelope support function of the deformed circle differs from
    // 1 + eps cos(psi) at order eps^2 (coefficient sin(psi)^2 / 2), so the
    // comparison is made where eps^2/2 sits below the 1e-10 budget.
    SupportCurve circle(support_circle());
    SUBCASE("eps = 1e-5 matches to 1e-10") {
        const double eps = 1e-5;
        DeformedCurve d = deform(circle, TrigPoly::cosine(1), eps);
        double worst = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double psi = kTwoPi * i / 32;
            worst = std::max(worst, std::abs(envelope_support(d, psi) - (1.0 + eps * std::cos(psi))));
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("deviation scales as eps^2") {
        auto dev = [&](double eps) {
            DeformedCurve d = deform(circle, TrigPoly::cosine(1), eps);
            double worst = 0.0;
            for (int i = 0; i < 16; ++i) {
                const double psi = kTwoPi * i / 16 + 0.1;
                worst = std::max(worst,
                                 std::abs(envelope_support(d, psi) - (1.0 + eps * std::cos(psi))));
            }
            return worst;
        };
        const double d1 = dev(2e-3), d2 = dev(1e-3);
        CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
    }
}

TEST_CASE("deformation convexity guard reports the violating parameter") {
    SupportCurve circle(support_circle());
    // Strong high-frequency profile: curvature flips sign at moderate eps.
    TrigPoly f = TrigPoly::cosine(4);
    CHECK_NOTHROW(deform(circle, f, 1e-3));
    CHECK_THROWS_WITH_AS(deform(circle, f, 0.2), doctest::Contains("convexity lost"),
                         std::invalid_argument);
}
