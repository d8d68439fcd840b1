#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace stardisc {

// Maximization objective over [0,1]^d.
using Objective = std::function<double(const std::vector<double>&)>;

struct Trajectory {
    // (evaluations used, best so far) at every strict improvement; best-so-far
    // is non-decreasing.
    std::vector<std::pair<std::uint64_t, double>> records;
};

struct OptResult {
    double best;
    std::vector<double> best_x;
    Trajectory trajectory;
    std::uint64_t evaluations;
};

std::vector<std::string> optimizer_ids();  // {"random-search","de","pso","spsa"}

// Runs one in-repo optimizer; spends at most `budget` objective calls, clamps
// every proposal into [0,1]^d. Throws std::invalid_argument listing the known
// ids when `optimizer` is unknown.
OptResult optimize(const std::string& optimizer, const Objective& objective, int dim,
                   std::uint64_t budget, std::uint64_t seed);

// External solver over a line-oriented pipe: the solver writes one query per
// line (d decimal coordinates), the harness answers with the value; 17
// significant digits both ways. The command is run through /bin/sh.
OptResult optimize_subprocess(const std::string& command, const Objective& objective, int dim,
                              std::uint64_t budget);

}  // namespace stardisc
