#include "stardisc/samplers.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#ifndef STARDISC_SOBOL_FILE_DEFAULT
#define STARDISC_SOBOL_FILE_DEFAULT "share/joe_kuo_directions.txt"
#endif

namespace stardisc {

std::string to_string(Sampler s) {
    switch (s) {
        case Sampler::Uniform: return "uniform";
        case Sampler::Sobol: return "sobol";
        case Sampler::Halton: return "halton";
    }
    throw std::logic_error("unreachable");
}

Sampler sampler_from_string(const std::string& name) {
    if (name == "uniform") return Sampler::Uniform;
    if (name == "sobol") return Sampler::Sobol;
    if (name == "halton") return Sampler::Halton;
    throw std::invalid_argument("unknown sampler '" + name + "' (expected uniform, sobol or halton)");
}

SuiteProblem suite_problem(int problem_id, int dim, int instance) {
    if (problem_id < 30 || problem_id > 59)
        throw std::invalid_argument("problem id " + std::to_string(problem_id) + " outside [30,59]");
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    if (instance < 1) throw std::invalid_argument("instance must be positive");
    Sampler s = problem_id < 40   ? Sampler::Uniform
                : problem_id < 50 ? Sampler::Sobol
                                  : Sampler::Halton;
    int n = kSuiteSizes[problem_id % 10];
    return SuiteProblem{problem_id, s, n, dim, instance};
}

namespace {

double u01(std::mt19937_64& rng) {
    // 53-bit mantissa, value in [0,1); avoids the implementation-defined
    // std::uniform_real_distribution stream.
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

PointSet generate_uniform(int n, int dim, int instance) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(instance));
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& pt : pts)
        for (double& c : pt) c = u01(rng);
    return PointSet(dim, std::move(pts));
}

bool is_prime(int v) {
    if (v < 2) return false;
    for (int f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

int nth_prime(int k) {  // 1-based
    int cnt = 0, v = 1;
    while (cnt < k) {
        ++v;
        if (is_prime(v)) ++cnt;
    }
    return v;
}

double radical_inverse(std::uint64_t i, int base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

// Cranley-Patterson rotation shifts for instance > 1; instance 1 is the
// unmodified sequence.
std::vector<double> rotation_shifts(int dim, int instance) {
    std::vector<double> sh(dim, 0.0);
    if (instance > 1) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(instance));
        for (double& s : sh) s = u01(rng);
    }
    return sh;
}

double rotate(double x, double s) {
    double v = x + s;
    if (v >= 1.0) v -= 1.0;
    if (v >= 1.0 || v < 0.0) v = 0.0;  // guards against rounding at the seam
    return v;
}

PointSet generate_halton(int n, int dim, int instance) {
    std::vector<int> bases(dim);
    for (int j = 0; j < dim; ++j) bases[j] = nth_prime(j + 1);
    auto sh = rotation_shifts(dim, instance);
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < dim; ++j)
            pts[i][j] = rotate(radical_inverse(static_cast<std::uint64_t>(i) + 1, bases[j]), sh[j]);
    return PointSet(dim, std::move(pts));
}

constexpr int kSobolBits = 52;

struct SobolTable {
    // direction[j][k]: dimension j (0-based), bit k (0-based), scaled so that
    // value = state * 2^-kSobolBits.
    std::vector<std::array<std::uint64_t, kSobolBits>> direction;
};

SobolTable load_sobol_table(const std::string& path, int dims_needed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open Sobol' direction-number file: " + path);
    SobolTable t;
    t.direction.resize(dims_needed);
    // dimension 1: van der Corput, v_k = 2^(B-k)
    for (int k = 0; k < kSobolBits; ++k)
        t.direction[0][k] = 1ULL << (kSobolBits - 1 - k);
    int have = 1;
    std::string line;
    while (have < dims_needed && std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int d, s;
        std::uint64_t a;
        if (!(ls >> d >> s >> a)) throw std::runtime_error("malformed direction-number line: " + line);
        if (d != have + 1) throw std::runtime_error("direction-number file: dimensions out of order");
        std::vector<std::uint64_t> m(s);
        for (auto& v : m)
            if (!(ls >> v)) throw std::runtime_error("malformed direction-number line: " + line);
        auto& V = t.direction[have];
        for (int k = 0; k < kSobolBits; ++k) {
            if (k < s) {
                V[k] = m[k] << (kSobolBits - 1 - k);
            } else {
                V[k] = V[k - s] ^ (V[k - s] >> s);
                for (int i = 1; i < s; ++i)
                    if ((a >> (s - 1 - i)) & 1ULL) V[k] ^= V[k - i];
            }
        }
        ++have;
    }
    if (have < dims_needed)
        throw std::runtime_error("direction-number file covers only " + std::to_string(have) +
                                 " dimensions, need " + std::to_string(dims_needed));
    return t;
}

const SobolTable& sobol_table(int dims_needed) {
    static std::mutex mu;
    static SobolTable table;
    static int loaded_dims = 0;
    std::lock_guard<std::mutex> lock(mu);
    if (dims_needed > loaded_dims) {
        table = load_sobol_table(sobol_direction_file(), std::max(dims_needed, 32));
        loaded_dims = static_cast<int>(table.direction.size());
    }
    return table;
}

PointSet generate_sobol(int n, int dim, int instance) {
    const SobolTable& t = sobol_table(dim);
    auto sh = rotation_shifts(dim, instance);
    std::vector<std::uint64_t> state(dim, 0);
    std::vector<std::vector<double>> pts;
    pts.reserve(n);
    // Gray-code order, starting at sequence index 1 (the all-zeros point is skipped).
    for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(n); ++i) {
        int c = 0;
        while ((i - 1) >> c & 1ULL) ++c;  // lowest zero bit of i-1
        std::vector<double> pt(dim);
        for (int j = 0; j < dim; ++j) {
            state[j] ^= t.direction[j][c];
            pt[j] = rotate(static_cast<double>(state[j]) * 0x1.0p-52, sh[j]);
        }
        pts.push_back(std::move(pt));
    }
    return PointSet(dim, std::move(pts));
}

}  // namespace

std::string sobol_direction_file() {
    if (const char* env = std::getenv("STARDISC_SOBOL_FILE"); env && *env) return env;
    return STARDISC_SOBOL_FILE_DEFAULT;
}

PointSet generate(Sampler sampler, int n, int dim, int instance) {
    if (n < 1) throw std::invalid_argument("sample count must be positive");
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    if (instance < 1) throw std::invalid_argument("instance must be positive");
    switch (sampler) {
        case Sampler::Uniform: return generate_uniform(n, dim, instance);
        case Sampler::Sobol: return generate_sobol(n, dim, instance);
        case Sampler::Halton: return generate_halton(n, dim, instance);
    }
    throw std::logic_error("unreachable");
}

PointSet generate(const SuiteProblem& p) { return generate(p.sampler, p.n, p.dim, p.instance); }

}  // namespace stardisc
