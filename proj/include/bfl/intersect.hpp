#pragma once

#include "bfl/curve.hpp"
#include "bfl/phase.hpp"

#include <optional>
#include <vector>

namespace bfl {

/// Non-owning uniform view over the concrete curve types, for line
/// intersection and mirroring. Closed views are parametrized by the support
/// angle phi on [0, 2pi); graph views by x on (-halfwidth, halfwidth).
class CurveView {
public:
    explicit CurveView(const SupportCurve& c) : support_(&c) {}
    explicit CurveView(const GermCurve& c) : germ_(&c) {}
    explicit CurveView(const DeformedCurve& c) : deformed_(&c) {}

    bool closed() const {
        if (deformed_) return deformed_->over_support();
        return support_ != nullptr;
    }

    double domain_halfwidth() const {
        if (support_ || (deformed_ && deformed_->over_support()))
            throw std::logic_error("CurveView: closed curves have no halfwidth");
        return germ_ ? germ_->halfwidth() : deformed_->germ_base().halfwidth();
    }

    Vec2 point(double param) const {
        if (support_) return support_->point(param);
        if (germ_) return germ_->point(param);
        return deformed_->point(param);
    }
    Vec2 tangent_vector(double param) const {
        if (support_) return support_->tangent_vector(param);
        if (germ_) return germ_->tangent_vector(param);
        return deformed_->tangent_vector(param);
    }
    Vec2 unit_tangent(double param) const {
        if (support_) return support_->unit_tangent(param);
        if (germ_) return germ_->unit_tangent(param);
        return deformed_->unit_tangent(param);
    }
    Vec2 outward_normal(double param) const {
        if (support_) return support_->outward_normal(param);
        if (germ_) return germ_->outward_normal(param);
        return deformed_->outward_normal(param);
    }

private:
    const SupportCurve* support_ = nullptr;
    const GermCurve* germ_ = nullptr;
    const DeformedCurve* deformed_ = nullptr;
};

/// One transversal crossing of an oriented line with a curve.
struct LineHit {
    double param = 0.0;      // curve parameter of the hit
    double t = 0.0;          // signed position along the line
    Vec2 point;
    double cos_angle = 0.0;  // <direction, unit tangent> at the hit
    double sin_angle = 0.0;  // <direction, outward normal>: >0 outward, <0 inward
};

struct IntersectOptions {
    int scan_points = kCurveGrid;       // bracketing scan resolution
    double root_tol = 1e-13;            // parameter tolerance of the refined root
    double tangency_cos = 1.0 - 1e-8;   // |cos| above this reports tangency
};

/// All transversal intersections of the line with the curve, sorted by t.
/// Throws GeometryError (NoIntersection or Tangency, tagged with `which`)
/// when the line misses or is tangent within the scan tolerance.
std::vector<LineHit> intersect_line(const CurveView& curve, const EuclideanLine& line,
                                    CurveTag which, const IntersectOptions& opt = {});

/// Hit with the largest t: the last one in the sense of the orientation.
LineHit last_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                 const IntersectOptions& opt = {});
/// Hit with the smallest t: the first one in the sense of the orientation.
LineHit first_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                  const IntersectOptions& opt = {});

/// Last crossing where the line points to the outward-normal side: the point
/// where it finally leaves the curve. For closed convex curves this is the
/// plain last hit; for germs it skips re-entries through the graph walls.
LineHit exit_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                 const IntersectOptions& opt = {});
/// First crossing where the line points to the inward side (mirror notion).
LineHit entry_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                  const IntersectOptions& opt = {});

}  // namespace bfl
