#pragma once

#include <array>
#include <string>

#include "stardisc/point_set.hpp"

namespace stardisc {

enum class Sampler { Uniform, Sobol, Halton };

std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string& name);

// Sample counts of the default suite; problem id 30+k / 40+k / 50+k maps to S[k].
inline constexpr std::array<int, 10> kSuiteSizes = {10, 25, 50, 100, 150, 200, 250, 500, 750, 1000};

struct SuiteProblem {
    int problem_id;   // 30..59
    Sampler sampler;  // 30s uniform, 40s Sobol', 50s Halton
    int n;
    int dim;
    int instance;  // >= 1, controls the randomization
};

SuiteProblem suite_problem(int problem_id, int dim, int instance);

// Deterministic point-set generation; identical arguments give bitwise
// identical coordinates.
PointSet generate(Sampler sampler, int n, int dim, int instance);
PointSet generate(const SuiteProblem& p);

// Path of the Sobol' direction-number table. Resolution order: the
// STARDISC_SOBOL_FILE environment variable, then the compiled-in default.
std::string sobol_direction_file();

}  // namespace stardisc
