#pragma once

#include <cstdint>
#include <stdexcept>

#include "stardisc/point_set.hpp"

namespace stardisc {

enum class BoxSide { Open, Closed };

struct DiscResult {
    double value;
    Query argmax;
    GridIndex argmax_index;
    BoxSide side;
};

// Better-than ordering shared by the oracle and DEM: larger value wins, ties
// prefer the closed-box term, remaining ties the lexicographically smallest
// grid index.
bool candidate_better(double value, BoxSide side, const GridIndex& idx,
                      double best_value, BoxSide best_side, const GridIndex& best_idx);

struct GuardExceeded : std::runtime_error {
    GuardExceeded(std::uint64_t required, std::uint64_t guard);
    std::uint64_t required;
    std::uint64_t guard;
};

struct OracleOptions {
    std::uint64_t guard = 100'000'000;  // refusal threshold on grid nodes
    int threads = 1;
    bool prune = false;  // restrict enumeration to critical boxes
};

// Exact star discrepancy by full enumeration of the closure grid.
DiscResult brute_force_disc(const PointSet& p, const OracleOptions& opts = {});

}  // namespace stardisc
