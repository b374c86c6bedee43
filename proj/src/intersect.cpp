#include "bfl/intersect.hpp"

#include <algorithm>
#include <cmath>

namespace bfl {

namespace {

// Signed offset of the curve point from the line (direction is unit).
double offset(const CurveView& curve, const EuclideanLine& line, double param) {
    return cross(line.direction, curve.point(param) - line.base);
}

double offset_d(const CurveView& curve, const EuclideanLine& line, double param) {
    return cross(line.direction, curve.tangent_vector(param));
}

// Newton polish inside a bracket [a, b] with G(a) G(b) < 0.
double refine_root(const CurveView& curve, const EuclideanLine& line, double a, double b,
                   double ga, double gb, double tol) {
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200; ++it) {
        const double g = offset(curve, line, x);
        if (g == 0.0) return x;
        if ((g < 0.0) == (ga < 0.0)) {
            a = x;
            ga = g;
        } else {
            b = x;
            gb = g;
        }
        const double gd = offset_d(curve, line, x);
        double next = (gd != 0.0) ? x - g / gd : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        if (std::abs(next - x) < tol * (1.0 + std::abs(x))) return next;
        x = next;
    }
    return x;
}

LineHit make_hit(const CurveView& curve, const EuclideanLine& line, double param) {
    LineHit hit;
    hit.param = param;
    hit.point = curve.point(param);
    hit.t = dot(hit.point - line.base, line.direction);
    hit.cos_angle = dot(line.direction, curve.unit_tangent(param));
    hit.sin_angle = dot(line.direction, curve.outward_normal(param));
    return hit;
}

}  // namespace

std::vector<LineHit> intersect_line(const CurveView& curve, const EuclideanLine& line,
                                    CurveTag which, const IntersectOptions& opt) {
    const bool closed = curve.closed();
    double lo = 0.0, hi = kTwoPi;
    if (!closed) {
        const double r = curve.domain_halfwidth();
        lo = -r;
        hi = r;
    }
    const int n = opt.scan_points;
    const double step = (hi - lo) / n;
    const int samples = closed ? n : n + 1;  // closed grids wrap around

    std::vector<double> g(samples);
    double min_abs = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        g[i] = offset(curve, line, lo + step * i);
        min_abs = std::min(min_abs, std::abs(g[i]));
    }

    std::vector<LineHit> hits;
    const int segs = closed ? n : n;
    for (int i = 0; i < segs; ++i) {
        const double ga = g[i];
        const double gb = closed ? g[(i + 1) % n] : g[i + 1];
        const double a = lo + step * i;
        const double b = a + step;
        if (ga == 0.0) {
            hits.push_back(make_hit(curve, line, a));
            continue;
        }
        if (ga * gb < 0.0) {
            const double root = refine_root(curve, line, a, b, ga, gb, opt.root_tol);
            hits.push_back(make_hit(curve, line, root));
        }
    }

    if (hits.empty()) {
        // Distinguish a clean miss from a grazing line the scan cannot bracket.
        const double scale = 1.0 + (curve.point(lo) - line.base).norm();
        if (min_abs < 1e-6 * scale)
            throw GeometryError(GeometryError::Kind::Tangency, which,
                                "grazing line, closest offset " + std::to_string(min_abs));
        throw GeometryError(GeometryError::Kind::NoIntersection, which,
                            "closest offset " + std::to_string(min_abs));
    }

    for (const auto& h : hits) {
        if (std::abs(h.cos_angle) > opt.tangency_cos)
            throw GeometryError(GeometryError::Kind::Tangency, which,
                                "|cos| = " + std::to_string(std::abs(h.cos_angle)) +
                                    " at parameter " + std::to_string(h.param));
    }

    std::sort(hits.begin(), hits.end(), [](const LineHit& x, const LineHit& y) { return x.t < y.t; });
    return hits;
}

LineHit last_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                 const IntersectOptions& opt) {
    return intersect_line(curve, line, which, opt).back();
}

LineHit first_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                  const IntersectOptions& opt) {
    return intersect_line(curve, line, which, opt).front();
}

LineHit exit_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                 const IntersectOptions& opt) {
    const auto hits = intersect_line(curve, line, which, opt);
    for (auto it = hits.rbegin(); it != hits.rend(); ++it)
        if (it->sin_angle > 0.0) return *it;
    throw GeometryError(GeometryError::Kind::NotOutgoing, which, "no outward crossing");
}

LineHit entry_hit(const CurveView& curve, const EuclideanLine& line, CurveTag which,
                  const IntersectOptions& opt) {
    const auto hits = intersect_line(curve, line, which, opt);
    for (const auto& h : hits)
        if (h.sin_angle < 0.0) return h;
    throw GeometryError(GeometryError::Kind::NotOutgoing, which, "no inward crossing");
}

}  // namespace bfl
