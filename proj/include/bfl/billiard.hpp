#pragma once

#include "bfl/intersect.hpp"
#include "bfl/phase.hpp"

#include <functional>
#include <vector>

namespace bfl {

/// Mirror of the direction across the tangent line at the hit point:
/// keeps the tangential component, flips the normal one.
inline Vec2 mirror_direction(const Vec2& d, const Vec2& unit_tangent) {
    return unit_tangent * (2.0 * dot(d, unit_tangent)) - d;
}

/// Reflection acting on oriented lines: mirrors at the LAST intersection
/// point; the result leaves that point on the opposite normal side (directed
/// inward for closed curves when the input was outgoing).
EuclideanLine reflect_line(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                           const IntersectOptions& opt = {});

/// Inverse reflection on oriented lines: mirrors at the FIRST intersection
/// point, so that reflect_line(reflect_line_inverse(l)) = l.
EuclideanLine reflect_line_inverse(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                                   const IntersectOptions& opt = {});

/// In-chart billiard map over a base curve: outgoing phase point to outgoing
/// phase point (one normalization layer around the inward-directed convention).
PhasePoint reflect_phase(const SupportCurve& curve, const PhasePoint& p,
                         const IntersectOptions& opt = {});
PhasePoint reflect_phase(const GermCurve& curve, const PhasePoint& p,
                         const IntersectOptions& opt = {});
PhasePoint reflect_phase_inverse(const SupportCurve& curve, const PhasePoint& p,
                                 const IntersectOptions& opt = {});
PhasePoint reflect_phase_inverse(const GermCurve& curve, const PhasePoint& p,
                                 const IntersectOptions& opt = {});

/// Billiard reflection map of a fixed curve, forward or inverse.
class ReflectionMap {
public:
    enum class Direction { Forward, Inverse };

    ReflectionMap(SupportCurve curve, Direction dir = Direction::Forward)
        : support_(std::move(curve)), dir_(dir) {}
    ReflectionMap(GermCurve curve, Direction dir = Direction::Forward)
        : germ_(std::move(curve)), dir_(dir) {}

    PhasePoint operator()(const PhasePoint& p) const {
        if (support_)
            return dir_ == Direction::Forward ? reflect_phase(*support_, p)
                                              : reflect_phase_inverse(*support_, p);
        return dir_ == Direction::Forward ? reflect_phase(*germ_, p)
                                          : reflect_phase_inverse(*germ_, p);
    }

    ReflectionMap inverse() const {
        ReflectionMap m = *this;
        m.dir_ = (dir_ == Direction::Forward) ? Direction::Inverse : Direction::Forward;
        return m;
    }

private:
    std::optional<SupportCurve> support_;
    std::optional<GermCurve> germ_;
    Direction dir_;
};

/// Compositional ratio: forward reflection in the base curve followed by the
/// inverse reflection in its normal deformation. Identity at eps = 0.
class DeltaMap {
public:
    explicit DeltaMap(DeformedCurve deformed) : deformed_(std::move(deformed)) {}

    DeltaMap(const SupportCurve& base, const TrigPoly& profile, double eps)
        : deformed_(base, profile, eps) {}
    DeltaMap(const GermCurve& base, const Poly& profile, double eps)
        : deformed_(base, profile, eps) {}

    double epsilon() const { return deformed_.epsilon(); }
    const DeformedCurve& deformed() const { return deformed_; }

    PhasePoint operator()(const PhasePoint& p) const;

private:
    DeformedCurve deformed_;
};

PhasePoint delta_t(const DeformedCurve& deformed, const PhasePoint& p,
                   const IntersectOptions& opt = {});

struct PerlineResult {
    PhaseTangent v;               // Richardson-extrapolated d DeltaT / d eps at 0
    double error_estimate = 0.0;  // from the extrapolation table
    std::vector<PhaseTangent> raw;  // central differences per schedule epsilon
};

/// Finite-difference derivative of the compositional ratio in eps at 0,
/// central differences over the schedule with one Richardson level.
/// Throws std::runtime_error when the extrapolation residuals fail to shrink.
PerlineResult perline_derivative(const SupportCurve& curve, const TrigPoly& profile,
                                 const PhasePoint& p,
                                 const std::vector<double>& eps_schedule = {1e-2, 5e-3, 2.5e-3});
PerlineResult perline_derivative(const GermCurve& curve, const Poly& profile, const PhasePoint& p,
                                 const std::vector<double>& eps_schedule = {1e-2, 5e-3, 2.5e-3});

using PhaseMap = std::function<PhasePoint(const PhasePoint&)>;

struct DefectSample {
    PhasePoint at{0.0, 1.0};
    double defect = 0.0;  // |det J - 1|
};

struct DefectReport {
    double max_defect = 0.0;
    double mean_defect = 0.0;
    size_t evaluated = 0;
    std::vector<DefectSample> samples;
    std::vector<PhasePoint> excluded;  // near-tangency or failed evaluations
};

/// Jacobian determinant defect of a phase map over a grid, by central
/// differences in the (s, w) chart. `period` = curve length for closed curves
/// (s differences are wrapped), 0 for germs.
DefectReport symplectic_defect(const PhaseMap& map, const std::vector<PhasePoint>& grid,
                               double period, double jacobian_step = 2e-4,
                               double margin = kTransversalityMargin);

/// Difference wrapped into (-period/2, period/2] when period > 0.
inline double wrap_diff(double a, double period) {
    if (period <= 0.0) return a;
    double r = std::fmod(a, period);
    if (r <= -0.5 * period) r += period;
    if (r > 0.5 * period) r -= period;
    return r;
}

}  // namespace bfl
