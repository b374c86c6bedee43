#include "bfl/grid.hpp"

#include "bfl/billiard.hpp"
#include "bfl/ode.hpp"

#include <cmath>

namespace bfl {

namespace {

SweepCell eval_cell(const PointMap& map, const PhasePoint& p) {
    SweepCell cell;
    try {
        cell.image = map(p);
        cell.ok = true;
    } catch (const GeometryError& e) {
        cell.error = e.what();
    } catch (const OdeLeftRegion& e) {
        cell.error = e.what();
    } catch (const std::invalid_argument& e) {
        cell.error = e.what();
    } catch (const std::runtime_error& e) {
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

std::vector<SweepCell> sweep_serial(const PointMap& map, const std::vector<PhasePoint>& grid) {
    std::vector<SweepCell> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_cell(map, grid[i]);
    return out;
}

std::vector<SweepCell> sweep_parallel(const PointMap& map, const std::vector<PhasePoint>& grid) {
    std::vector<SweepCell> out(grid.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (size_t i = 0; i < grid.size(); ++i) out[i] = eval_cell(map, grid[i]);
    return out;
}

std::vector<SweepCell> sweep(const PointMap& map, const std::vector<PhasePoint>& grid,
                             bool parallel) {
    return parallel ? sweep_parallel(map, grid) : sweep_serial(map, grid);
}

SweepDistance sweep_distance(const std::vector<SweepCell>& a, const std::vector<SweepCell>& b,
                             double period) {
    if (a.size() != b.size()) throw std::invalid_argument("sweep_distance: size mismatch");
    SweepDistance d;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i].ok || !b[i].ok) {
            ++d.failed;
            continue;
        }
        const double ds = wrap_diff(a[i].image.s - b[i].image.s, period);
        const double dw = a[i].image.w() - b[i].image.w();
        d.sup = std::max(d.sup, std::hypot(ds, dw));
        ++d.compared;
    }
    return d;
}

}  // namespace bfl
