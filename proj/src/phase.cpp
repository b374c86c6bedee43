#include "bfl/phase.hpp"

#include "bfl/intersect.hpp"

namespace bfl {

namespace {

EuclideanLine outgoing_line(const Vec2& point, const Vec2& unit_tangent, const Vec2& outward_normal,
                            double theta) {
    const Vec2 d = unit_tangent * std::cos(theta) + outward_normal * std::sin(theta);
    return EuclideanLine(point, d);
}

PhasePoint chart_hit(double s, double cos_angle, double sin_angle) {
    if (sin_angle <= 0.0)
        throw GeometryError(GeometryError::Kind::NotOutgoing, CurveTag::Base,
                            "sin theta = " + std::to_string(sin_angle));
    return PhasePoint(s, std::atan2(sin_angle, cos_angle));
}

}  // namespace

EuclideanLine line_from_phase(const SupportCurve& curve, const PhasePoint& p) {
    const double phi = curve.phi_from_arclength(p.s);
    return outgoing_line(curve.point(phi), curve.unit_tangent(phi), curve.outward_normal(phi),
                         p.theta);
}

EuclideanLine line_from_phase(const GermCurve& curve, const PhasePoint& p) {
    const double x = curve.x_from_arclength(p.s);
    if (!curve.contains(x))
        throw GeometryError(GeometryError::Kind::OutsideDomain, CurveTag::Base,
                            "x = " + std::to_string(x));
    return outgoing_line(curve.point(x), curve.unit_tangent(x), curve.outward_normal(x), p.theta);
}

PhasePoint phase_from_line(const SupportCurve& curve, const EuclideanLine& line) {
    const LineHit hit = exit_hit(CurveView(curve), line, CurveTag::Base);
    return chart_hit(curve.arclength(hit.param), hit.cos_angle, hit.sin_angle);
}

PhasePoint phase_from_line(const GermCurve& curve, const EuclideanLine& line) {
    const LineHit hit = exit_hit(CurveView(curve), line, CurveTag::Base);
    return chart_hit(curve.arclength(hit.param), hit.cos_angle, hit.sin_angle);
}

}  // namespace bfl
