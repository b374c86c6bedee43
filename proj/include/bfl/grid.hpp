#pragma once

#include "bfl/phase.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bfl {

/// Rectangular phase grid specification: counts and ranges in s and theta.
struct GridSpec {
    int ns = 16;
    int ntheta = 16;
    double s_min = 0.0;
    double s_max = kTwoPi;
    double theta_min = std::numbers::pi / 6;
    double theta_max = 5 * std::numbers::pi / 6;

    std::vector<PhasePoint> points() const {
        std::vector<PhasePoint> out;
        out.reserve(size_t(ns) * ntheta);
        for (int i = 0; i < ns; ++i) {
            const double s = ns == 1 ? s_min : s_min + (s_max - s_min) * i / (ns - 1.0 + (s_wraps() ? 1.0 : 0.0));
            for (int j = 0; j < ntheta; ++j) {
                const double th =
                    ntheta == 1 ? theta_min : theta_min + (theta_max - theta_min) * j / (ntheta - 1.0);
                out.emplace_back(s, th);
            }
        }
        return out;
    }

    bool s_wraps() const { return std::abs((s_max - s_min) - kTwoPi) < 1e-12; }

    std::string describe() const {
        return std::to_string(ns) + "x" + std::to_string(ntheta) + " grid, s in [" +
               std::to_string(s_min) + ", " + std::to_string(s_max) + "), theta in [" +
               std::to_string(theta_min) + ", " + std::to_string(theta_max) + "]";
    }
};

/// One evaluated grid point: the image phase point or the failure message.
struct SweepCell {
    bool ok = false;
    PhasePoint image{0.0, 1.0};
    std::string error;
};

using PointMap = std::function<PhasePoint(const PhasePoint&)>;

/// Serial reference sweep: apply the map to every grid point.
std::vector<SweepCell> sweep_serial(const PointMap& map, const std::vector<PhasePoint>& grid);

/// OpenMP sweep; bitwise-identical to sweep_serial (each cell is written
/// independently by index, no shared accumulator).
std::vector<SweepCell> sweep_parallel(const PointMap& map, const std::vector<PhasePoint>& grid);

/// Production entry point: parallel when built with OpenMP, serial otherwise.
std::vector<SweepCell> sweep(const PointMap& map, const std::vector<PhasePoint>& grid,
                             bool parallel = true);

/// Sup of the componentwise phase distance (s wrapped mod period) between two
/// sweeps over the cells where both succeeded. Deterministic serial reduction.
struct SweepDistance {
    double sup = 0.0;
    size_t compared = 0;
    size_t failed = 0;
};
SweepDistance sweep_distance(const std::vector<SweepCell>& a, const std::vector<SweepCell>& b,
                             double period);

}  // namespace bfl
