#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stardisc/optimizers.hpp"
#include "stardisc/samplers.hpp"

namespace stardisc {

struct RunConfig {
    int problem_id;
    int dim;
    std::uint64_t budget = 0;  // 0 means the default 2500 * dim
    int runs_per_instance = 10;
    int instances = 10;
    std::string optimizer = "random-search";
    std::uint64_t master_seed = 1;

    std::uint64_t effective_budget() const { return budget ? budget : 2500ull * dim; }
};

// Independent per-run seed stream derived from (master seed, problem, dim,
// instance, run, optimizer).
std::uint64_t derive_seed(const RunConfig& cfg, int instance, int run);

struct RunRecord {
    SuiteProblem problem;
    std::string optimizer;
    int run;
    std::uint64_t seed;
    std::uint64_t budget;
    double final_value;
    std::string trajectory_file;
    std::string metadata_file;
};

// Executes runs_per_instance x instances runs, writing one trajectory CSV
// (header `evaluations,best_so_far`) and one JSON metadata record per run
// under out_dir. Deterministic in the config.
std::vector<RunRecord> run_experiment(const RunConfig& cfg, const std::string& out_dir);

// Expected running time to reach `target`: total evaluations spent (full
// budget for misses) divided by the number of hitting runs; +inf if none hit.
double ert(const std::vector<Trajectory>& runs, double target, std::uint64_t budget);

enum class BoundSource { Dem, Ta };

// Relative gap R = (opt_bound - final) / opt_bound. A final value above a TA
// bound clamps to 0 (the heuristic bound was beaten); above a DEM bound by
// more than 1e-9 it throws, since the exact bound cannot be beaten.
double relative_gap(double opt_bound, double final_value, BoundSource source);

struct BoundEntry {
    int problem_id;
    int dim;
    int instance;
    double bound;
    BoundSource source;
};

// Bounds CSV: header `problem_id,dim,instance,bound,source`.
std::vector<BoundEntry> load_bounds(const std::string& path);
void save_bounds(const std::vector<BoundEntry>& bounds, const std::string& path);

Trajectory load_trajectory(const std::string& path);

}  // namespace stardisc
