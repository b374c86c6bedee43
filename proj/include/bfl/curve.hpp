#pragma once

#include "bfl/trigpoly.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace bfl {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double t) const { return {x * t, y * t}; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const {
        const double n = norm();
        if (n == 0.0) throw std::domain_error("Vec2: normalizing zero vector");
        return {x / n, y / n};
    }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Vec2 rot90ccw(const Vec2& v) { return {-v.y, v.x}; }
inline Vec2 rot90cw(const Vec2& v) { return {v.y, -v.x}; }

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr int kCurveGrid = 1024;  // dense check grid (>= 4x max frequency in practice)

/// Closed strictly convex curve given by its support function h(phi) as a trig
/// polynomial; the curve is gamma(phi) = h n(phi) + h' T(phi) with n=(cos,sin),
/// T=(-sin,cos), curvature radius rho = h + h'' > 0.
class SupportCurve {
public:
    explicit SupportCurve(TrigPoly h) : h_(std::move(h)), hp_(h_.derivative()), hpp_(hp_.derivative()) {
        margin_ = grid_margin(&margin_phi_);
        if (margin_ <= 0.0)
            throw std::invalid_argument("SupportCurve: not strictly convex, h+h'' = " +
                                        std::to_string(margin_) + " at phi = " +
                                        std::to_string(margin_phi_));
    }

    static SupportCurve circle(double radius = 1.0) {
        (void)radius;
        return SupportCurve(TrigPoly::constant(Rational(1)));
    }
    static SupportCurve circle_rational(const Rational& radius) {
        return SupportCurve(TrigPoly::constant(radius));
    }

    const TrigPoly& support() const { return h_; }

    double radius_of_curvature(double phi) const { return h_.evaluate(phi) + hpp_.evaluate(phi); }

    /// min over the dense grid of h + h''; positive iff strictly convex there.
    double convexity_margin(double* argmin = nullptr) const {
        if (argmin) *argmin = margin_phi_;
        return margin_;
    }

    Vec2 point(double phi) const {
        const double h = h_.evaluate(phi), hp = hp_.evaluate(phi);
        const double c = std::cos(phi), s = std::sin(phi);
        return {h * c - hp * s, h * s + hp * c};
    }
    /// dgamma/dphi = rho * T; T = (-sin, cos).
    Vec2 tangent_vector(double phi) const {
        const double rho = radius_of_curvature(phi);
        return {-rho * std::sin(phi), rho * std::cos(phi)};
    }
    Vec2 unit_tangent(double phi) const { return {-std::sin(phi), std::cos(phi)}; }
    Vec2 outward_normal(double phi) const { return {std::cos(phi), std::sin(phi)}; }

    /// Arclength s(phi) = int_0^phi (h + h''), exact per trig-polynomial term.
    double arclength(double phi) const {
        const auto& t = h_.terms();
        double acc = 0.0;
        for (const auto& [k, p] : t) {
            const double c = to_double(p.c), s = to_double(p.s);
            if (k == 0) {
                acc += c * phi;
            } else {
                const double w = 1.0 - double(k) * double(k);
                acc += w * (c * std::sin(k * phi) / k + s * (1.0 - std::cos(k * phi)) / k);
            }
        }
        return acc;
    }

    double total_length() const { return to_double(h_.mean_coeff()) * kTwoPi; }

    /// Inverse of the (strictly increasing) arclength map, by Newton iteration.
    double phi_from_arclength(double s) const {
        const double L = total_length();
        double target = std::fmod(s, L);
        if (target < 0) target += L;
        double phi = target / to_double(h_.mean_coeff());
        for (int it = 0; it < 64; ++it) {
            const double f = arclength(phi) - target;
            const double d = radius_of_curvature(phi);
            const double step = f / d;
            phi -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(phi))) break;
        }
        return phi;
    }

private:
    double grid_margin(double* at) const {
        double best = std::numeric_limits<double>::infinity();
        double where = 0.0;
        for (int i = 0; i < kCurveGrid; ++i) {
            const double phi = kTwoPi * i / kCurveGrid;
            const double rho = radius_of_curvature(phi);
            if (rho < best) {
                best = rho;
                where = phi;
            }
        }
        if (at) *at = where;
        return best;
    }

    TrigPoly h_, hp_, hpp_;
    double margin_ = 0.0;
    double margin_phi_ = 0.0;
};

/// Local curve germ: graph {(x, g(x)) : |x| < halfwidth} with g(0)=g'(0)=0,
/// passing through the origin tangent to the x-axis.
class GermCurve {
public:
    GermCurve(Poly g, double halfwidth) : g_(std::move(g)), gp_(g_.derivative()), gpp_(gp_.derivative()), halfwidth_(halfwidth) {
        if (halfwidth <= 0.0) throw std::invalid_argument("GermCurve: halfwidth must be positive");
        if (g_.coeff(0) != 0 || g_.coeff(1) != 0)
            throw std::invalid_argument("GermCurve: g(0)=g'(0)=0 required");
    }

    const Poly& graph() const { return g_; }
    double halfwidth() const { return halfwidth_; }
    bool contains(double x) const { return std::abs(x) < halfwidth_; }

    Vec2 point(double x) const { return {x, g_.evaluate(x)}; }
    Vec2 tangent_vector(double x) const { return {1.0, gp_.evaluate(x)}; }
    Vec2 unit_tangent(double x) const { return tangent_vector(x).normalized(); }
    /// Unit normal with positive second coordinate at the origin, extended
    /// continuously: (-g', 1)/sqrt(1+g'^2).
    Vec2 outward_normal(double x) const {
        const double gp = gp_.evaluate(x);
        const double q = std::sqrt(1.0 + gp * gp);
        return {-gp / q, 1.0 / q};
    }

    double speed(double x) const {
        const double gp = gp_.evaluate(x);
        return std::sqrt(1.0 + gp * gp);
    }

    /// Arclength from the origin, by composite Gauss-Legendre quadrature.
    double arclength(double x) const;
    /// Inverse of arclength (monotone; Newton with ds/dx = speed).
    double x_from_arclength(double s) const;

private:
    Poly g_, gp_, gpp_;
    double halfwidth_;
};

/// Normal deformation of a base curve: point map x -> x + eps f(x) N(x).
/// Represented parametrically by the base parameter (phi for support curves,
/// x for germs); its support function is never needed internally.
class DeformedCurve {
public:
    DeformedCurve(SupportCurve base, TrigPoly profile, double eps);
    DeformedCurve(GermCurve base, Poly profile, double eps);

    bool over_support() const { return support_.has_value(); }
    const SupportCurve& support_base() const { return *support_; }
    const GermCurve& germ_base() const { return *germ_; }
    double epsilon() const { return eps_; }

    double profile(double param) const {
        return over_support() ? trig_profile_.evaluate(param) : poly_profile_.evaluate(param);
    }

    Vec2 point(double param) const;
    Vec2 tangent_vector(double param) const;
    Vec2 unit_tangent(double param) const { return tangent_vector(param).normalized(); }
    /// Outward normal consistent with the base curve's orientation frame.
    Vec2 outward_normal(double param) const;

    /// min over the dense grid of the signed curvature numerator cross(P', P'');
    /// positive iff the deformed closed curve stays strictly convex.
    double convexity_margin(double* argmin = nullptr) const;

private:
    Vec2 second_derivative(double param) const;

    std::optional<SupportCurve> support_;
    std::optional<GermCurve> germ_;
    TrigPoly trig_profile_, trig_profile_d_, trig_profile_dd_, rho_d_;
    Poly poly_profile_, poly_profile_d_, germ_gp_, germ_gpp_;
    double eps_ = 0.0;
};

/// Factory matching the deformation law x + eps f(x) N(x); rejects support
/// deformations that lose strict convexity at the stored eps.
inline DeformedCurve deform(const SupportCurve& base, const TrigPoly& profile, double eps) {
    if (eps < 0.0) throw std::invalid_argument("deform: eps must be >= 0");
    return DeformedCurve(base, profile, eps);
}
inline DeformedCurve deform(const GermCurve& base, const Poly& profile, double eps) {
    if (eps < 0.0) throw std::invalid_argument("deform: eps must be >= 0");
    return DeformedCurve(base, profile, eps);
}

}  // namespace bfl
