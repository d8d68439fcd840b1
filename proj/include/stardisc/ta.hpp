#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stardisc/point_set.hpp"

namespace stardisc {

// Lower the corner onto the componentwise maximum of the points inside the
// closed box; keeps the closed count, minimizes the volume, so bar_delta
// never decreases. Empty boxes collapse to the origin.
Query snap_down(const PointSet& p, const GridIndex& g);

// Raise each coordinate (ascending dimension order) to the largest value in
// the closure grid that adds no point to the open box; delta never decreases.
Query snap_up(const PointSet& p, const GridIndex& g);

struct TaResult {
    double value;        // best two-sided local discrepancy seen; a lower bound
    Query argmax;
    std::uint64_t evaluations;
    // (evaluations used, best so far) at every strict improvement
    std::vector<std::pair<std::uint64_t, double>> improvements;
};

// Threshold Accepting on the grid index space [1..|grid_j|]^d with critical-box
// snapping. Deterministic in (p, budget, seed). Every raw or snapped local
// discrepancy evaluation costs one unit of budget.
TaResult ta_lower_bound(const PointSet& p, std::uint64_t budget, std::uint64_t seed);

}  // namespace stardisc
