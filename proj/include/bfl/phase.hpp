#pragma once

#include "bfl/curve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bfl {

/// Default transversality margin: phase points with |cos theta| above
/// 1 - margin are rejected by the maps.
inline constexpr double kTransversalityMargin = 1e-6;

/// Oriented line meeting the curve transversally, in curve-adapted
/// coordinates: s = arclength of the last intersection point, theta = angle
/// from the positively oriented tangent, in (0, pi). Outgoing lines have
/// direction cos(theta) T + sin(theta) N with N the outward normal.
struct PhasePoint {
    double s = 0.0;
    double theta = 0.0;

    PhasePoint() = default;
    PhasePoint(double s_, double theta_) : s(s_), theta(theta_) {
        if (!(theta > 0.0 && theta < std::numbers::pi))
            throw std::invalid_argument("PhasePoint: theta must lie in (0, pi), got " +
                                        std::to_string(theta_));
    }

    double w() const { return std::cos(theta); }
    double y() const { return 1.0 / std::tan(theta); }

    static PhasePoint from_w(double s, double w) {
        if (!(w > -1.0 && w < 1.0))
            throw std::invalid_argument("PhasePoint: w must lie in (-1, 1)");
        return PhasePoint(s, std::acos(w));
    }
    static PhasePoint from_y(double s, double y) { return PhasePoint(s, std::atan2(1.0, y)); }

    bool transversal(double margin = kTransversalityMargin) const {
        return std::abs(w()) <= 1.0 - margin;
    }
};

enum class Chart { Theta, W, Y };

/// Chart value of a phase point: (s, theta), (s, w = cos theta) or (s, y = cot theta).
inline std::pair<double, double> to_chart(const PhasePoint& p, Chart chart) {
    switch (chart) {
        case Chart::Theta: return {p.s, p.theta};
        case Chart::W: return {p.s, p.w()};
        case Chart::Y: return {p.s, p.y()};
    }
    throw std::logic_error("to_chart: bad chart");
}

inline PhasePoint from_chart(double s, double value, Chart chart) {
    switch (chart) {
        case Chart::Theta: return PhasePoint(s, value);
        case Chart::W: return PhasePoint::from_w(s, value);
        case Chart::Y: return PhasePoint::from_y(s, value);
    }
    throw std::logic_error("from_chart: bad chart");
}

/// Oriented straight line: base point plus unit direction.
struct EuclideanLine {
    Vec2 base;
    Vec2 direction;

    EuclideanLine(Vec2 base_, Vec2 direction_) : base(base_), direction(direction_) {
        const double n = direction.norm();
        if (std::abs(n - 1.0) > 1e-12) direction = direction * (1.0 / n);
    }

    Vec2 at(double t) const { return base + direction * t; }
};

/// Tangent vector to the phase cylinder in the (s, w) chart.
struct PhaseTangent {
    double ds = 0.0;
    double dw = 0.0;
};

/// Symplectic pairing dw ^ ds on (s,w) tangents: dw(u) ds(v) - ds(u) dw(v).
inline double symplectic_product(const PhaseTangent& u, const PhaseTangent& v) {
    return u.dw * v.ds - u.ds * v.dw;
}

/// Same pairing evaluated on (s, theta) tangents at theta: sin(theta) ds ^ dtheta.
inline double symplectic_product_theta(double theta, const PhaseTangent& u_st,
                                       const PhaseTangent& v_st) {
    return std::sin(theta) * (u_st.ds * v_st.dw - u_st.dw * v_st.ds);
}

enum class CurveTag { Base, Deformed };

/// Geometric failures of the reflection pipeline, with provenance.
class GeometryError : public std::runtime_error {
public:
    enum class Kind { NoIntersection, Tangency, NotOutgoing, OutsideDomain, LeftRegion };

    GeometryError(Kind kind, CurveTag which, const std::string& detail)
        : std::runtime_error(describe(kind, which) + (detail.empty() ? "" : ": " + detail)),
          kind_(kind),
          which_(which) {}

    Kind kind() const { return kind_; }
    CurveTag which() const { return which_; }

private:
    static std::string describe(Kind kind, CurveTag which) {
        std::string name;
        switch (kind) {
            case Kind::NoIntersection: name = "line does not meet the curve"; break;
            case Kind::Tangency: name = "line is tangent to the curve"; break;
            case Kind::NotOutgoing: name = "line is not outgoing at its last hit"; break;
            case Kind::OutsideDomain: name = "parameter outside the curve domain"; break;
            case Kind::LeftRegion: name = "trajectory left the transversality region"; break;
        }
        return name + (which == CurveTag::Base ? " (base curve)" : " (deformed curve)");
    }

    Kind kind_;
    CurveTag which_;
};

/// Line through gamma(s) making angle theta with the tangent, oriented
/// outgoing (gamma(s) is its last intersection point with the curve).
EuclideanLine line_from_phase(const SupportCurve& curve, const PhasePoint& p);
EuclideanLine line_from_phase(const GermCurve& curve, const PhasePoint& p);

/// Inverse of line_from_phase: charts the LAST intersection point of the line
/// in the sense of its orientation. Throws GeometryError on tangency or miss.
PhasePoint phase_from_line(const SupportCurve& curve, const EuclideanLine& line);
PhasePoint phase_from_line(const GermCurve& curve, const EuclideanLine& line);

}  // namespace bfl
