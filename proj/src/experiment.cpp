#include "stardisc/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stardisc/point_set.hpp"

namespace stardisc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

}  // namespace

std::uint64_t derive_seed(const RunConfig& cfg, int instance, int run) {
    std::uint64_t h = splitmix64(cfg.master_seed);
    h = mix(h, static_cast<std::uint64_t>(cfg.problem_id));
    h = mix(h, static_cast<std::uint64_t>(cfg.dim));
    h = mix(h, static_cast<std::uint64_t>(instance));
    h = mix(h, static_cast<std::uint64_t>(run));
    for (char c : cfg.optimizer) h = mix(h, static_cast<unsigned char>(c));
    return h;
}

std::vector<RunRecord> run_experiment(const RunConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::uint64_t budget = cfg.effective_budget();
    std::vector<RunRecord> records;
    for (int inst = 1; inst <= cfg.instances; ++inst) {
        const SuiteProblem prob = suite_problem(cfg.problem_id, cfg.dim, inst);
        const PointSet points = generate(prob);
        Objective obj = [&points](const std::vector<double>& q) {
            return local_disc_two_sided(points, q);
        };
        for (int run = 1; run <= cfg.runs_per_instance; ++run) {
            const std::uint64_t seed = derive_seed(cfg, inst, run);
            OptResult res = optimize(cfg.optimizer, obj, cfg.dim, budget, seed);

            std::ostringstream stem;
            stem << "F" << cfg.problem_id << "_d" << cfg.dim << "_i" << inst << "_r" << run
                 << "_" << cfg.optimizer;
            const std::string traj_path = (fs::path(out_dir) / (stem.str() + ".csv")).string();
            const std::string meta_path = (fs::path(out_dir) / (stem.str() + ".json")).string();

            {
                std::ofstream out(traj_path);
                if (!out) throw std::runtime_error("cannot write trajectory file: " + traj_path);
                out << "evaluations,best_so_far\n";
                out.precision(17);
                for (const auto& [e, v] : res.trajectory.records) out << e << ',' << v << '\n';
            }
            {
                nlohmann::json meta{{"problem_id", prob.problem_id},
                                    {"sampler", to_string(prob.sampler)},
                                    {"n", prob.n},
                                    {"dim", prob.dim},
                                    {"instance", inst},
                                    {"run", run},
                                    {"optimizer", cfg.optimizer},
                                    {"seed", seed},
                                    {"budget", budget},
                                    {"final_value", res.best},
                                    {"objective", "local_disc_two_sided"}};
                std::ofstream out(meta_path);
                if (!out) throw std::runtime_error("cannot write metadata file: " + meta_path);
                out << meta.dump(2) << '\n';
            }
            records.push_back(RunRecord{prob, cfg.optimizer, run, seed, budget, res.best,
                                        traj_path, meta_path});
        }
    }
    return records;
}

double ert(const std::vector<Trajectory>& runs, double target, std::uint64_t budget) {
    std::uint64_t spent = 0;
    std::uint64_t hits = 0;
    for (const auto& t : runs) {
        bool hit = false;
        for (const auto& [e, v] : t.records) {
            if (v >= target) {
                spent += e;
                hit = true;
                ++hits;
                break;
            }
        }
        if (!hit) spent += budget;
    }
    if (hits == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(spent) / static_cast<double>(hits);
}

double relative_gap(double opt_bound, double final_value, BoundSource source) {
    if (!(opt_bound > 0.0)) throw std::invalid_argument("relative_gap: bound must be positive");
    if (final_value > opt_bound) {
        if (source == BoundSource::Dem && final_value > opt_bound + 1e-9)
            throw std::runtime_error("relative_gap: final value " + std::to_string(final_value) +
                                     " exceeds the exact DEM bound " + std::to_string(opt_bound));
        return 0.0;
    }
    return (opt_bound - final_value) / opt_bound;
}

std::vector<BoundEntry> load_bounds(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bounds file: " + path);
    std::vector<BoundEntry> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("problem_id", 0) == 0) { first = false; continue; }
        first = false;
        std::istringstream ls(line);
        BoundEntry e;
        std::string src;
        char comma;
        if (!(ls >> e.problem_id >> comma >> e.dim >> comma >> e.instance >> comma >> e.bound >>
              comma))
            throw std::runtime_error("malformed bounds line: " + line);
        std::getline(ls, src);
        if (src == "dem")
            e.source = BoundSource::Dem;
        else if (src == "ta")
            e.source = BoundSource::Ta;
        else
            throw std::runtime_error("bounds line has unknown source '" + src + "'");
        out.push_back(e);
    }
    return out;
}

void save_bounds(const std::vector<BoundEntry>& bounds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write bounds file: " + path);
    out << "problem_id,dim,instance,bound,source\n";
    out.precision(17);
    for (const auto& e : bounds)
        out << e.problem_id << ',' << e.dim << ',' << e.instance << ',' << e.bound << ','
            << (e.source == BoundSource::Dem ? "dem" : "ta") << '\n';
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
    Trajectory t;
    std::string line;
    if (!std::getline(in, line) || line != "evaluations,best_so_far")
        throw std::runtime_error("trajectory file missing header: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::uint64_t e;
        double v;
        char comma;
        if (!(ls >> e >> comma >> v)) throw std::runtime_error("malformed trajectory line: " + line);
        t.records.emplace_back(e, v);
    }
    return t;
}

}  // namespace stardisc
