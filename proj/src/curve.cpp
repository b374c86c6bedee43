#include "bfl/curve.hpp"

#include <array>

namespace bfl {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGLNode = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGLWeight = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
double gauss16(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < kGLNode.size(); ++i) {
        acc += kGLWeight[i] * (f(mid + half * kGLNode[i]) + f(mid - half * kGLNode[i]));
    }
    return acc * half;
}

}  // namespace

double GermCurve::arclength(double x) const {
    auto speed_at = [this](double t) { return speed(t); };
    const int panels = 8;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = x * i / panels, b = x * (i + 1) / panels;
        acc += gauss16(speed_at, a, b);
    }
    return acc;
}

double GermCurve::x_from_arclength(double s) const {
    double x = s;  // speed >= 1, so |x| <= |s| is a sound start
    for (int it = 0; it < 64; ++it) {
        const double f = arclength(x) - s;
        const double step = f / speed(x);
        x -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    return x;
}

DeformedCurve::DeformedCurve(SupportCurve base, TrigPoly profile, double eps)
    : support_(std::move(base)),
      trig_profile_(std::move(profile)),
      trig_profile_d_(trig_profile_.derivative()),
      trig_profile_dd_(trig_profile_d_.derivative()),
      eps_(eps) {
    const TrigPoly hp = support_->support().derivative();
    rho_d_ = hp + hp.derivative().derivative();  // rho' = h' + h'''
    if (eps_ != 0.0) {
        double where = 0.0;
        const double margin = convexity_margin(&where);
        if (margin <= 0.0)
            throw std::invalid_argument(
                "DeformedCurve: convexity lost at eps = " + std::to_string(eps_) +
                ", parameter phi = " + std::to_string(where));
    }
}

DeformedCurve::DeformedCurve(GermCurve base, Poly profile, double eps)
    : germ_(std::move(base)),
      poly_profile_(std::move(profile)),
      poly_profile_d_(poly_profile_.derivative()),
      eps_(eps) {
    germ_gp_ = germ_->graph().derivative();
    germ_gpp_ = germ_gp_.derivative();
}

Vec2 DeformedCurve::point(double param) const {
    if (over_support()) {
        const double f = trig_profile_.evaluate(param);
        return support_->point(param) + support_->outward_normal(param) * (eps_ * f);
    }
    const double f = poly_profile_.evaluate(param);
    return germ_->point(param) + germ_->outward_normal(param) * (eps_ * f);
}

Vec2 DeformedCurve::tangent_vector(double param) const {
    if (over_support()) {
        // P' = (rho + eps f) T + eps f' n, using n' = T in the support frame.
        const double rho = support_->radius_of_curvature(param);
        const double f = trig_profile_.evaluate(param);
        const double fp = trig_profile_d_.evaluate(param);
        return support_->unit_tangent(param) * (rho + eps_ * f) +
               support_->outward_normal(param) * (eps_ * fp);
    }
    // A' = (1, g') + eps (f' N + f N'), with N' = -(g''/q^3) (1, g').
    const double x = param;
    const double f = poly_profile_.evaluate(x);
    const double fp = poly_profile_d_.evaluate(x);
    const double gp = germ_gp_.evaluate(x);
    const double gpp = germ_gpp_.evaluate(x);
    const double q = std::sqrt(1.0 + gp * gp);
    const Vec2 graph_tangent{1.0, gp};
    const Vec2 n = germ_->outward_normal(x);
    const Vec2 nprime = graph_tangent * (-gpp / (q * q * q));
    return graph_tangent + (n * fp + nprime * f) * eps_;
}

Vec2 DeformedCurve::second_derivative(double param) const {
    // Support base only (used by the convexity check). With T' = -n, n' = T:
    // P'' = (rho' + 2 eps f') T + (eps(f'' - f) - rho) n.
    const double rho = support_->radius_of_curvature(param);
    const double rhop = rho_d_.evaluate(param);
    const double f = trig_profile_.evaluate(param);
    const double fp = trig_profile_d_.evaluate(param);
    const double fpp = trig_profile_dd_.evaluate(param);
    const Vec2 T = support_->unit_tangent(param);
    const Vec2 n = support_->outward_normal(param);
    return T * (rhop + 2.0 * eps_ * fp) + n * (eps_ * (fpp - f) - rho);
}

double DeformedCurve::convexity_margin(double* argmin) const {
    if (!over_support())
        throw std::domain_error("DeformedCurve: convexity margin is defined for closed curves");
    double best = std::numeric_limits<double>::infinity();
    double where = 0.0;
    for (int i = 0; i < kCurveGrid; ++i) {
        const double phi = kTwoPi * i / kCurveGrid;
        const double c = cross(tangent_vector(phi), second_derivative(phi));
        if (c < best) {
            best = c;
            where = phi;
        }
    }
    if (argmin) *argmin = where;
    return best;
}

Vec2 DeformedCurve::outward_normal(double param) const {
    const Vec2 t = unit_tangent(param);
    // Closed curves run counterclockwise with the outward normal to the right
    // of travel; germ normals point to the left (positive y at the origin).
    return over_support() ? rot90cw(t) : rot90ccw(t);
}

}  // namespace bfl
