#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bfl {

/// State on the phase cylinder in the (s, w) chart.
struct OdeState {
    double s = 0.0;
    double w = 0.0;
};

using OdeRhs = std::function<OdeState(const OdeState&)>;

struct OdeOptions {
    double tol = 1e-12;        // local error tolerance (per step, mixed abs/rel)
    double w_limit = 1.0 - 1e-6;  // refuse to step past |w| = w_limit
    double h_init = 1e-2;
    double h_min = 1e-14;
    long max_steps = 2000000;
};

/// Thrown when a trajectory reaches the chart boundary |w| -> 1.
class OdeLeftRegion : public std::runtime_error {
public:
    OdeLeftRegion(double time, double w)
        : std::runtime_error("trajectory left the transversality region at t = " +
                             std::to_string(time) + ", w = " + std::to_string(w)),
          time_(time) {}
    double exit_time() const { return time_; }

private:
    double time_;
};

/// Reference integrator: the 8th-order Dormand-Prince pair with 5th/3rd-order
/// error estimate (the classic 12-stage "853" scheme) and a PI controller.
/// Serves as ground truth for the composition experiments.
OdeState integrate(const OdeRhs& rhs, OdeState y0, double t_final, const OdeOptions& opt = {});

}  // namespace bfl
