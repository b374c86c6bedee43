#include "bfl/approx.hpp"

#include <cmath>
#include <stdexcept>

namespace bfl {

PhasePoint Schedule::apply(const PhasePoint& p) const {
    PhasePoint cur = p;
    for (const auto& step : steps) {
        if (const auto* r = std::get_if<ReflectDeltaStep>(&step)) {
            for (long i = 0; i < r->repeats; ++i) cur = delta_t(*r->curve, cur);
        } else {
            const auto& f = std::get<FlowStep>(step);
            for (long i = 0; i < f.repeats; ++i) cur = flow(f.element, f.time, cur);
        }
    }
    return cur;
}

long Schedule::total_steps() const {
    long n = 0;
    for (const auto& step : steps) {
        if (const auto* r = std::get_if<ReflectDeltaStep>(&step)) n += r->repeats;
        else n += std::get<FlowStep>(step).repeats;
    }
    return n;
}

PhasePoint power_scheme(const DeformedCurve& film, double t, const PhasePoint& p) {
    const double eps = film.epsilon();
    if (t == 0.0) return p;
    if (eps <= 0.0) throw std::invalid_argument("power_scheme: eps must be positive");
    const long reps = static_cast<long>(std::floor(t / eps));
    PhasePoint cur = p;
    for (long i = 0; i < reps; ++i) {
        try {
            cur = delta_t(film, cur);
        } catch (const GeometryError& e) {
            throw std::runtime_error("power_scheme: step " + std::to_string(i) + " of " +
                                     std::to_string(reps) + " failed: " + e.what());
        }
    }
    return cur;
}

Schedule power_schedule(std::shared_ptr<const DeformedCurve> film, double t) {
    Schedule s;
    ReflectDeltaStep step;
    const double eps = film->epsilon();
    if (eps <= 0.0) throw std::invalid_argument("power_schedule: eps must be positive");
    step.curve = std::move(film);
    step.repeats = static_cast<long>(std::floor(t / eps));
    s.steps.emplace_back(std::move(step));
    return s;
}

PhasePoint sum_scheme(const FlowMap& a, const FlowMap& b, double t, int n, const PhasePoint& p) {
    if (n < 1) throw std::invalid_argument("sum_scheme: N >= 1 required");
    const double tau = t / n;
    PhasePoint cur = p;
    for (int i = 0; i < n; ++i) {
        cur = flow(b.element(), tau, cur);
        cur = flow(a.element(), tau, cur);
    }
    return cur;
}

Schedule sum_schedule(const GradedElement& a, const GradedElement& b, double t, int n,
                      const FlowOptions&) {
    if (n < 1) throw std::invalid_argument("sum_schedule: N >= 1 required");
    Schedule s;
    const double tau = t / n;
    for (int i = 0; i < n; ++i) {
        s.steps.emplace_back(FlowStep{b, tau, 1});
        s.steps.emplace_back(FlowStep{a, tau, 1});
    }
    return s;
}

PhasePoint commutator_scheme(const FlowMap& a, const FlowMap& b, double t, int n,
                             const PhasePoint& p) {
    if (t < 0.0) throw std::invalid_argument("commutator_scheme: t >= 0 required");
    if (n < 1) throw std::invalid_argument("commutator_scheme: N >= 1 required");
    if (t == 0.0) return p;
    const double tau = std::sqrt(t) / n;
    PhasePoint cur = p;
    const long blocks = static_cast<long>(n) * n;
    // Block order (B, A, -B, -A): with the field convention (-H_w, +H_s) the
    // commutator [X_B, X_A] is the Hamiltonian field of the bracket {A, B}.
    for (long i = 0; i < blocks; ++i) {
        cur = flow(b.element(), tau, cur);
        cur = flow(a.element(), tau, cur);
        cur = flow(b.element(), -tau, cur);
        cur = flow(a.element(), -tau, cur);
    }
    return cur;
}

Schedule commutator_schedule(const GradedElement& a, const GradedElement& b, double t, int n,
                             const FlowOptions&) {
    if (t < 0.0) throw std::invalid_argument("commutator_schedule: t >= 0 required");
    if (n < 1) throw std::invalid_argument("commutator_schedule: N >= 1 required");
    Schedule s;
    const double tau = std::sqrt(t) / n;
    const long blocks = static_cast<long>(n) * n;
    for (long i = 0; i < blocks; ++i) {
        s.steps.emplace_back(FlowStep{b, tau, 1});
        s.steps.emplace_back(FlowStep{a, tau, 1});
        s.steps.emplace_back(FlowStep{b, -tau, 1});
        s.steps.emplace_back(FlowStep{a, -tau, 1});
    }
    return s;
}

SweepReport run_schedule(const Schedule& sched, const PointMap& reference,
                         const std::vector<PhasePoint>& grid, double period, bool parallel) {
    if (grid.empty()) throw std::invalid_argument("run_schedule: empty grid");
    const auto approx_cells = sweep([&](const PhasePoint& p) { return sched.apply(p); }, grid, parallel);
    const auto ref_cells = sweep(reference, grid, parallel);

    SweepReport rep;
    rep.per_point.assign(grid.size(), -1.0);
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!approx_cells[i].ok || !ref_cells[i].ok) {
            rep.exclusions.push_back(!approx_cells[i].ok ? approx_cells[i].error
                                                         : ref_cells[i].error);
            continue;
        }
        const double ds = wrap_diff(approx_cells[i].image.s - ref_cells[i].image.s, period);
        const double dw = approx_cells[i].image.w() - ref_cells[i].image.w();
        rep.per_point[i] = std::hypot(ds, dw);
        rep.sup = std::max(rep.sup, rep.per_point[i]);
        ++rep.evaluated;
    }
    if (rep.evaluated == 0) throw std::runtime_error("run_schedule: no valid grid points");
    return rep;
}

SlopeFit fit_slope(const std::vector<double>& params, const std::vector<double>& errors) {
    if (params.size() != errors.size() || params.size() < 3)
        throw std::invalid_argument("fit_slope: need >= 3 rungs");
    const size_t n = params.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (params[i] <= 0.0 || errors[i] <= 0.0)
            throw std::invalid_argument("fit_slope: params and errors must be positive");
        lx[i] = std::log(params[i]);
        ly[i] = std::log(errors[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    SlopeFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    fit.stderr_slope = n > 2 ? std::sqrt(ss / double(n - 2) / (sxx - sx * sx / n)) : 0.0;
    // Ladder ordered by decreasing parameter: errors must decrease with it.
    for (size_t i = 0; i + 1 < n; ++i) {
        const bool param_down = params[i + 1] < params[i];
        if ((param_down && errors[i + 1] >= errors[i]) ||
            (!param_down && errors[i + 1] <= errors[i]))
            fit.monotone = false;
    }
    return fit;
}

ErrorReport run_ladder(const std::vector<std::pair<double, Schedule>>& rungs,
                       const PointMap& reference, const GridSpec& grid, double period,
                       bool parallel) {
    if (rungs.size() < 3) throw std::invalid_argument("run_ladder: need >= 3 rungs for a slope fit");
    ErrorReport rep;
    rep.grid_description = grid.describe();
    const auto points = grid.points();
    for (const auto& [param, sched] : rungs) {
        SweepReport sr = run_schedule(sched, reference, points, period, parallel);
        rep.rung_params.push_back(param);
        rep.rung_sup.push_back(sr.sup);
        rep.finest = std::move(sr);
    }
    rep.fit = fit_slope(rep.rung_params, rep.rung_sup);
    return rep;
}

}  // namespace bfl
