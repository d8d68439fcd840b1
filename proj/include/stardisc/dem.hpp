#pragma once

#include <cstdint>
#include <vector>

#include "stardisc/oracle.hpp"
#include "stardisc/point_set.hpp"

namespace stardisc {

// Node of the slab decomposition. Dimensions < depth carry real bounds,
// dimensions >= depth span [0,1]. `active` holds indices of the points that
// can still appear in some anchored box with corner in this cell;
// `internal_dim[k]` is the dimension in which active[k] is internal, or -1.
struct CellBox {
    int depth = 0;
    std::vector<double> lower, upper;
    std::vector<int> active;
    std::vector<signed char> internal_dim;
};

CellBox root_cell(const PointSet& p);

// Split `cell` along dimension cell.depth into child slabs. Split coordinates
// are the mandatory values (coordinates of points internal in an earlier
// dimension) plus greedy cuts so that at most ceil(sqrt(n)) points lie weakly
// inside each slab, ending at 1.
std::vector<CellBox> decompose(const PointSet& p, const CellBox& cell);

// Maximum two-sided local discrepancy over grid corners attributed to a fully
// decomposed cell (depth == d).
double dp_cell(const PointSet& p, const CellBox& cell);

// Task-spawn rule of the parallel recursion: spawn when the residual work
// n_points^(1+(d-depth)/2) reaches the cutoff.
bool should_spawn(std::size_t n_points, int d, int depth, double cutoff);

struct DemOptions {
    int threads = 1;
    double cutoff = 1e8;
};

struct DemResult {
    double value;
    Query argmax;
    GridIndex argmax_index;
    BoxSide side;
    std::uint64_t cells;  // fully decomposed cells evaluated
};

// Exact star discrepancy in O(n^(1+d/2)); value and argmax are independent of
// the thread count.
DemResult dem_disc(const PointSet& p, const DemOptions& opts = {});

}  // namespace stardisc
