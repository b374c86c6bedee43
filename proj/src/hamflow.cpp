#include "bfl/hamflow.hpp"

#include <cmath>

namespace bfl {

double graded_weight(int degree, double w) {
    // w^m / (sqrt(1-w^2))^{m-1}
    const double root = std::sqrt(1.0 - w * w);
    return std::pow(w / root, degree) * root;
}

double graded_weight_dw(int degree, double w) {
    // d/dw [ y^m / sqrt(1+y^2) ] = m y^{m-1} + (m-1) y^{m+1}, y = w/sqrt(1-w^2).
    const double y = w / std::sqrt(1.0 - w * w);
    const int m = degree;
    double lower = 0.0;
    if (m >= 1) lower = m * std::pow(y, m - 1);
    return lower + (m - 1) * std::pow(y, m + 1);
}

double ham_value(const HamiltonianTerm& t, const PhasePoint& p) {
    return t.h.evaluate(p.s) * graded_weight(t.degree, p.w());
}

double ham_value(const GradedElement& e, const PhasePoint& p) {
    double acc = 0.0;
    for (const auto& [k, h] : e.parts()) acc += h.evaluate(p.s) * graded_weight(k, p.w());
    return acc;
}

HamPartials ham_partials(const GradedElement& e, const PhasePoint& p) {
    HamPartials out;
    const double w = p.w();
    for (const auto& [k, h] : e.parts()) {
        out.dH_ds += h.derivative().evaluate(p.s) * graded_weight(k, w);
        out.dH_dw += h.evaluate(p.s) * graded_weight_dw(k, w);
    }
    return out;
}

PhaseTangent ham_field(const GradedElement& e, const PhasePoint& p) {
    const HamPartials d = ham_partials(e, p);
    return {-d.dH_dw, d.dH_ds};
}

PhaseTangent ham_field(const HamiltonianTerm& t, const PhasePoint& p) {
    return ham_field(t.as_element(), p);
}

PhaseTangent profile_field(double f_value, double f_arclength_derivative, const PhasePoint& p) {
    const double w = p.w();
    const double root = std::sqrt(1.0 - w * w);
    return {-2.0 * w * f_value / root, -2.0 * root * f_arclength_derivative};
}

double poisson_numeric(const GradedElement& a, const GradedElement& b, const PhasePoint& p) {
    const HamPartials da = ham_partials(a, p);
    const HamPartials db = ham_partials(b, p);
    return da.dH_dw * db.dH_ds - da.dH_ds * db.dH_dw;
}

PhasePoint flow(const GradedElement& e, double time, const PhasePoint& p, const FlowOptions& opt) {
    if (time == 0.0) return p;
    // Precompute the derivative coefficients once per flow call.
    std::vector<std::pair<int, CoeffFn>> parts, dparts;
    for (const auto& [k, h] : e.parts()) {
        parts.emplace_back(k, h);
        dparts.emplace_back(k, h.derivative());
    }
    OdeRhs rhs = [&](const OdeState& y) -> OdeState {
        double dH_ds = 0.0, dH_dw = 0.0;
        for (size_t i = 0; i < parts.size(); ++i) {
            dH_ds += dparts[i].second.evaluate(y.s) * graded_weight(parts[i].first, y.w);
            dH_dw += parts[i].second.evaluate(y.s) * graded_weight_dw(parts[i].first, y.w);
        }
        return {-dH_dw, dH_ds};
    };
    OdeOptions oo;
    oo.tol = opt.tol;
    oo.w_limit = 1.0 - opt.w_margin;
    const OdeState out = integrate(rhs, {p.s, p.w()}, time, oo);
    return PhasePoint::from_w(out.s, out.w);
}

}  // namespace bfl
