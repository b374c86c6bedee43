#pragma once

#include "bfl/billiard.hpp"
#include "bfl/grid.hpp"
#include "bfl/hamflow.hpp"

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace bfl {

/// One step of a composition schedule: a thin-film reflection ratio or a
/// reference Hamiltonian flow, with a repetition count.
struct ReflectDeltaStep {
    std::shared_ptr<const DeformedCurve> curve;  // base + profile + eps
    long repeats = 1;
};
struct FlowStep {
    GradedElement element;
    double time = 0.0;
    long repeats = 1;
};

/// Finite composition plan acting on the phase cylinder; applied left to
/// right (steps[0] acts first).
struct Schedule {
    std::vector<std::variant<ReflectDeltaStep, FlowStep>> steps;

    PhasePoint apply(const PhasePoint& p) const;
    long total_steps() const;
};

/// (DeltaT_{eps,f})^{floor(t/eps)}: the power scheme realizing the time-t
/// thin-film flow by repeated reflection ratios.
PhasePoint power_scheme(const DeformedCurve& film, double t, const PhasePoint& p);
Schedule power_schedule(std::shared_ptr<const DeformedCurve> film, double t);

/// (g^{t/N}_A g^{t/N}_B)^N: alternating flow blocks converging to the flow of
/// the sum Hamiltonian. Within one block the B-flow acts first, so N = 1 is
/// literally g^t_A after g^t_B.
PhasePoint sum_scheme(const FlowMap& a, const FlowMap& b, double t, int n, const PhasePoint& p);
Schedule sum_schedule(const GradedElement& a, const GradedElement& b, double t, int n,
                      const FlowOptions& opt = {});

/// N^2 commutator blocks of per-block step tau = sqrt(t)/N, each applying the
/// flows of A, B, -A, -B in that order; converges to the flow of the bracket
/// Hamiltonian {A, B}. Requires t >= 0.
PhasePoint commutator_scheme(const FlowMap& a, const FlowMap& b, double t, int n,
                             const PhasePoint& p);
Schedule commutator_schedule(const GradedElement& a, const GradedElement& b, double t, int n,
                             const FlowOptions& opt = {});

/// Deviation of a schedule from a reference flow over a grid.
struct SweepReport {
    double sup = 0.0;
    std::vector<double> per_point;        // -1 marks excluded points
    std::vector<std::string> exclusions;  // failure messages, indexed as encountered
    size_t evaluated = 0;
};

/// Runs the schedule and the reference over the grid and measures the
/// Euclidean deviation in the (s, w) chart, s wrapped mod period.
SweepReport run_schedule(const Schedule& sched, const PointMap& reference,
                         const std::vector<PhasePoint>& grid, double period,
                         bool parallel = true);

/// Least-squares slope of log(err) against log(param) with its standard error.
struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    bool monotone = true;  // errors decrease along the ladder
};
SlopeFit fit_slope(const std::vector<double>& params, const std::vector<double>& errors);

/// Convergence ladder: one schedule per rung against a fixed reference.
struct ErrorReport {
    std::string grid_description;
    std::vector<double> rung_params;  // eps or 1/N per rung
    std::vector<double> rung_sup;     // sup deviation per rung
    SweepReport finest;               // per-point data of the last rung
    SlopeFit fit;                     // requires >= 3 rungs
};

ErrorReport run_ladder(const std::vector<std::pair<double, Schedule>>& rungs,
                       const PointMap& reference, const GridSpec& grid, double period,
                       bool parallel = true);

}  // namespace bfl
