#include "bfl/billiard.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bfl {

namespace {

struct Frame {
    Vec2 point;
    Vec2 tangent;
    Vec2 normal;
};

Frame frame_at(const SupportCurve& c, double phi) {
    return {c.point(phi), c.unit_tangent(phi), c.outward_normal(phi)};
}
Frame frame_at(const GermCurve& c, double x) {
    return {c.point(x), c.unit_tangent(x), c.outward_normal(x)};
}

template <class Curve>
double param_of(const Curve& c, double s);
template <>
double param_of(const SupportCurve& c, double s) {
    return c.phi_from_arclength(s);
}
template <>
double param_of(const GermCurve& c, double s) {
    const double x = c.x_from_arclength(s);
    if (!c.contains(x))
        throw GeometryError(GeometryError::Kind::OutsideDomain, CurveTag::Base,
                            "x = " + std::to_string(x));
    return x;
}

template <class Curve>
double arclength_of(const Curve& c, double param) {
    return c.arclength(param);
}

// Chart the line that is outgoing at the given hit of the base curve.
template <class Curve>
PhasePoint chart_at_hit(const Curve& curve, const LineHit& hit) {
    if (hit.sin_angle <= 0.0)
        throw GeometryError(GeometryError::Kind::NotOutgoing, CurveTag::Base,
                            "sin theta = " + std::to_string(hit.sin_angle));
    return PhasePoint(arclength_of(curve, hit.param), std::atan2(hit.sin_angle, hit.cos_angle));
}

template <class Curve>
PhasePoint reflect_phase_impl(const Curve& curve, const PhasePoint& p, const IntersectOptions& opt) {
    const double param = param_of(curve, p.s);
    const Frame f = frame_at(curve, param);
    const Vec2 d = f.tangent * std::cos(p.theta) + f.normal * std::sin(p.theta);
    // The input line exits at gamma(s); mirror there and follow the inward
    // line to its exit point, which carries the outgoing chart.
    const Vec2 d1 = mirror_direction(d, f.tangent);
    const EuclideanLine inward(f.point, d1);
    const LineHit exit = exit_hit(CurveView(curve), inward, CurveTag::Base, opt);
    return chart_at_hit(curve, exit);
}

template <class Curve>
PhasePoint reflect_phase_inverse_impl(const Curve& curve, const PhasePoint& p,
                                      const IntersectOptions& opt) {
    const double param = param_of(curve, p.s);
    const Frame f = frame_at(curve, param);
    const Vec2 d = f.tangent * std::cos(p.theta) + f.normal * std::sin(p.theta);
    const EuclideanLine line(f.point, d);
    // Mirror at the entry point; the mirrored line is outgoing there.
    const LineHit entry = entry_hit(CurveView(curve), line, CurveTag::Base, opt);
    const Vec2 d1 = mirror_direction(d, curve.unit_tangent(entry.param));
    LineHit h = entry;
    h.cos_angle = dot(d1, curve.unit_tangent(entry.param));
    h.sin_angle = dot(d1, curve.outward_normal(entry.param));
    return chart_at_hit(curve, h);
}

template <class Curve>
PhasePoint delta_t_impl(const Curve& base, const DeformedCurve& deformed, const PhasePoint& p,
                        const IntersectOptions& opt) {
    const double param = param_of(base, p.s);
    const Frame f = frame_at(base, param);
    const Vec2 d = f.tangent * std::cos(p.theta) + f.normal * std::sin(p.theta);

    // Forward reflection in the base curve at gamma(s).
    const Vec2 d1 = mirror_direction(d, f.tangent);
    const EuclideanLine l1(f.point, d1);

    // Inverse reflection in the deformed curve at the entry point of l1.
    const CurveView dview(deformed);
    const LineHit q = entry_hit(dview, l1, CurveTag::Deformed, opt);
    const Vec2 d2 = mirror_direction(d1, dview.unit_tangent(q.param));
    const EuclideanLine l2(q.point, d2);

    // Normalize back to the outgoing chart of the base curve.
    const LineHit exit = exit_hit(CurveView(base), l2, CurveTag::Base, opt);
    return chart_at_hit(base, exit);
}

template <class Curve, class Profile>
PerlineResult perline_impl(const Curve& curve, const Profile& profile, const PhasePoint& p,
                           const std::vector<double>& eps_schedule) {
    if (eps_schedule.size() < 2)
        throw std::invalid_argument("perline_derivative: need at least two schedule epsilons");
    for (size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]))
            throw std::invalid_argument("perline_derivative: schedule must decrease");

    double period = 0.0;
    if constexpr (std::is_same_v<Curve, SupportCurve>) period = curve.total_length();

    PerlineResult res;
    for (double eps : eps_schedule) {
        const DeformedCurve plus(curve, profile, eps);
        const DeformedCurve minus(curve, profile, -eps);
        const PhasePoint fwd = delta_t(plus, p);
        const PhasePoint bwd = delta_t(minus, p);
        PhaseTangent d;
        d.ds = wrap_diff(fwd.s - bwd.s, period) / (2.0 * eps);
        d.dw = (fwd.w() - bwd.w()) / (2.0 * eps);
        res.raw.push_back(d);
    }

    // One Richardson level: central differences carry an eps^2 leading error.
    std::vector<PhaseTangent> extr;
    for (size_t i = 0; i + 1 < res.raw.size(); ++i) {
        const double r = eps_schedule[i] / eps_schedule[i + 1];
        const double r2 = r * r;
        PhaseTangent e;
        e.ds = (r2 * res.raw[i + 1].ds - res.raw[i].ds) / (r2 - 1.0);
        e.dw = (r2 * res.raw[i + 1].dw - res.raw[i].dw) / (r2 - 1.0);
        extr.push_back(e);
    }

    auto dist = [](const PhaseTangent& a, const PhaseTangent& b) {
        return std::hypot(a.ds - b.ds, a.dw - b.dw);
    };
    if (res.raw.size() >= 3) {
        // Residuals between successive central differences must shrink.
        for (size_t i = 0; i + 2 < res.raw.size(); ++i) {
            const double r0 = dist(res.raw[i + 1], res.raw[i]);
            const double r1 = dist(res.raw[i + 2], res.raw[i + 1]);
            if (r1 > r0 && r1 > 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + r0))
                throw std::runtime_error(
                    "perline_derivative: schedule too coarse, non-monotone residuals");
        }
    }

    res.v = extr.back();
    res.error_estimate = extr.size() >= 2 ? dist(extr.back(), extr[extr.size() - 2])
                                          : dist(extr.back(), res.raw.back());
    return res;
}

}  // namespace

EuclideanLine reflect_line(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                           const IntersectOptions& opt) {
    const LineHit hit = last_hit(curve, line, which, opt);
    return EuclideanLine(hit.point, mirror_direction(line.direction, curve.unit_tangent(hit.param)));
}

EuclideanLine reflect_line_inverse(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                                   const IntersectOptions& opt) {
    const LineHit hit = first_hit(curve, line, which, opt);
    return EuclideanLine(hit.point, mirror_direction(line.direction, curve.unit_tangent(hit.param)));
}

PhasePoint reflect_phase(const SupportCurve& curve, const PhasePoint& p, const IntersectOptions& opt) {
    return reflect_phase_impl(curve, p, opt);
}
PhasePoint reflect_phase(const GermCurve& curve, const PhasePoint& p, const IntersectOptions& opt) {
    return reflect_phase_impl(curve, p, opt);
}
PhasePoint reflect_phase_inverse(const SupportCurve& curve, const PhasePoint& p,
                                 const IntersectOptions& opt) {
    return reflect_phase_inverse_impl(curve, p, opt);
}
PhasePoint reflect_phase_inverse(const GermCurve& curve, const PhasePoint& p,
                                 const IntersectOptions& opt) {
    return reflect_phase_inverse_impl(curve, p, opt);
}

PhasePoint delta_t(const DeformedCurve& deformed, const PhasePoint& p, const IntersectOptions& opt) {
    if (deformed.over_support()) return delta_t_impl(deformed.support_base(), deformed, p, opt);
    return delta_t_impl(deformed.germ_base(), deformed, p, opt);
}

PhasePoint DeltaMap::operator()(const PhasePoint& p) const { return delta_t(deformed_, p); }

PerlineResult perline_derivative(const SupportCurve& curve, const TrigPoly& profile,
                                 const PhasePoint& p, const std::vector<double>& eps_schedule) {
    return perline_impl(curve, profile, p, eps_schedule);
}
PerlineResult perline_derivative(const GermCurve& curve, const Poly& profile, const PhasePoint& p,
                                 const std::vector<double>& eps_schedule) {
    return perline_impl(curve, profile, p, eps_schedule);
}

DefectReport symplectic_defect(const PhaseMap& map, const std::vector<PhasePoint>& grid,
                               double period, double jacobian_step, double margin) {
    DefectReport rep;
    const double h = jacobian_step;
    double total = 0.0;
    for (const auto& p : grid) {
        if (!p.transversal(margin)) {
            rep.excluded.push_back(p);
            continue;
        }
        try {
            const double w0 = p.w();
            const PhasePoint sp(p.s + h, p.theta), sm(p.s - h, p.theta);
            const PhasePoint wp = PhasePoint::from_w(p.s, w0 + h);
            const PhasePoint wm = PhasePoint::from_w(p.s, w0 - h);
            const PhasePoint fsp = map(sp), fsm = map(sm), fwp = map(wp), fwm = map(wm);
            // Realized input differences absorb the w <-> theta representation
            // roundoff, keeping the identity map at an exactly unit Jacobian.
            const double hs = sp.s - sm.s;
            const double hw = wp.w() - wm.w();
            const double ds_ds = wrap_diff(fsp.s - fsm.s, period) / hs;
            const double dw_ds = (fsp.w() - fsm.w()) / hs;
            const double ds_dw = wrap_diff(fwp.s - fwm.s, period) / hw;
            const double dw_dw = (fwp.w() - fwm.w()) / hw;
            const double det = ds_ds * dw_dw - ds_dw * dw_ds;
            DefectSample sample;
            sample.at = p;
            sample.defect = std::abs(det - 1.0);
            rep.samples.push_back(sample);
            rep.max_defect = std::max(rep.max_defect, sample.defect);
            total += sample.defect;
        } catch (const GeometryError&) {
            rep.excluded.push_back(p);
        } catch (const std::invalid_argument&) {
            rep.excluded.push_back(p);
        }
    }
    rep.evaluated = rep.samples.size();
    rep.mean_defect = rep.evaluated ? total / double(rep.evaluated) : 0.0;
    return rep;
}

}  // namespace bfl
