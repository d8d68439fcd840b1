#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "stardisc/dem.hpp"
#include "stardisc/experiment.hpp"
#include "stardisc/oracle.hpp"
#include "stardisc/samplers.hpp"
#include "stardisc/ta.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitGuard = 3;
constexpr int kExitConsistency = 4;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void print_query(std::ostream& out, const stardisc::Query& q) {
    out.precision(17);
    for (size_t i = 0; i < q.size(); ++i) out << (i ? " " : "") << q[i];
}

int cmd_gen(const std::string& sampler_name, int n, int d, int instance,
            const std::string& out_path) {
    const auto sampler = stardisc::sampler_from_string(sampler_name);
    if (std::find(stardisc::kSuiteSizes.begin(), stardisc::kSuiteSizes.end(), n) ==
        stardisc::kSuiteSizes.end())
        std::cerr << "warning: n=" << n << " is not a suite sample count\n";
    const auto points = stardisc::generate(sampler, n, d, instance);
    if (out_path.empty()) {
        points.write(std::cout);
    } else {
        points.save(out_path);
    }
    return 0;
}

int cmd_exact(const std::string& points_path, const std::string& algo, int threads, double cutoff,
              std::uint64_t guard, bool prune) {
    const auto points = stardisc::PointSet::load(points_path);
    const auto t0 = Clock::now();
    double value;
    stardisc::Query argmax;
    stardisc::BoxSide side;
    std::uint64_t cells = 0;
    if (algo == "dem") {
        auto res = stardisc::dem_disc(points, {threads, cutoff});
        value = res.value;
        argmax = res.argmax;
        side = res.side;
        cells = res.cells;
    } else if (algo == "bruteforce") {
        auto res = stardisc::brute_force_disc(points, {guard, threads, prune});
        value = res.value;
        argmax = res.argmax;
        side = res.side;
    } else {
        std::cerr << "error: unknown algorithm '" << algo << "' (expected dem or bruteforce)\n";
        return kExitValidation;
    }
    std::cout.precision(17);
    std::cout << "value " << value << "\n";
    std::cout << "argmax ";
    print_query(std::cout, argmax);
    std::cout << "\nside " << (side == stardisc::BoxSide::Open ? "open" : "closed") << "\n";
    std::cout << "time_s " << seconds_since(t0) << "\n";
    if (algo == "dem") std::cout << "cells " << cells << "\n";
    return 0;
}

int cmd_ta(const std::string& points_path, std::uint64_t budget, std::uint64_t seed,
           const std::string& trajectory_path) {
    const auto points = stardisc::PointSet::load(points_path);
    const auto t0 = Clock::now();
    const auto res = stardisc::ta_lower_bound(points, budget, seed);
    std::cout.precision(17);
    std::cout << "value " << res.value << "\n";
    std::cout << "argmax ";
    print_query(std::cout, res.argmax);
    std::cout << "\nevaluations " << res.evaluations << "\n";
    std::cout << "time_s " << seconds_since(t0) << "\n";
    if (!trajectory_path.empty()) {
        std::ofstream out(trajectory_path);
        if (!out) {
            std::cerr << "error: cannot write " << trajectory_path << "\n";
            return kExitValidation;
        }
        out << "evaluations,best_so_far\n";
        out.precision(17);
        for (const auto& [e, v] : res.improvements) out << e << ',' << v << '\n';
        out << res.evaluations << ',' << res.value << '\n';
    }
    return 0;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ls(s);
    std::string item;
    while (std::getline(ls, item, ',')) out.push_back(std::stoi(item));
    return out;
}

int cmd_bench(const std::string& suite, const std::string& dims_arg,
              const std::string& optimizers_arg, const std::string& problems_arg, int runs,
              int instances, std::uint64_t seed, std::uint64_t budget, const std::string& out_dir) {
    std::vector<int> problem_ids;
    if (!problems_arg.empty()) {
        problem_ids = parse_int_list(problems_arg);
    } else if (suite == "default") {
        for (int id = 30; id <= 59; ++id) problem_ids.push_back(id);
    } else {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return kExitValidation;
    }
    const std::vector<int> dims = parse_int_list(dims_arg);
    std::vector<std::string> optimizers;
    {
        std::istringstream ls(optimizers_arg);
        std::string item;
        while (std::getline(ls, item, ',')) {
            if (item == "rs") item = "random-search";
            optimizers.push_back(item);
        }
    }
    for (int id : problem_ids)
        for (int d : dims)
            for (const auto& opt : optimizers) {
                stardisc::RunConfig cfg;
                cfg.problem_id = id;
                cfg.dim = d;
                cfg.budget = budget;
                cfg.runs_per_instance = runs;
                cfg.instances = instances;
                cfg.optimizer = opt;
                cfg.master_seed = seed;
                const auto records = stardisc::run_experiment(cfg, out_dir);
                std::cout << "F" << id << " d=" << d << " " << opt << ": " << records.size()
                          << " runs done\n";
            }
    return 0;
}

struct ScenarioKey {
    int problem_id, dim;
    std::string optimizer;
    bool operator<(const ScenarioKey& o) const {
        return std::tie(problem_id, dim, optimizer) < std::tie(o.problem_id, o.dim, o.optimizer);
    }
};

int cmd_report(const std::string& logs_dir, const std::string& bounds_path,
               const std::string& out_path, const std::string& targets_arg) {
    namespace fs = std::filesystem;
    std::map<std::tuple<int, int, int>, stardisc::BoundEntry> bounds;
    if (!bounds_path.empty())
        for (const auto& b : stardisc::load_bounds(bounds_path))
            bounds[{b.problem_id, b.dim, b.instance}] = b;

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitValidation;
    }
    out.precision(17);
    out << "problem_id,sampler,n,dim,instance,run,optimizer,final_value,bound,bound_source,R\n";

    struct RunInfo {
        double final_value;
        std::optional<double> r;
        std::string traj;
        std::uint64_t budget;
    };
    std::map<ScenarioKey, std::vector<RunInfo>> scenarios;

    std::vector<fs::path> metas;
    for (const auto& e : fs::directory_iterator(logs_dir))
        if (e.path().extension() == ".json") metas.push_back(e.path());
    std::sort(metas.begin(), metas.end());
    for (const auto& mp : metas) {
        std::ifstream mf(mp);
        nlohmann::json meta = nlohmann::json::parse(mf);
        const int id = meta["problem_id"], d = meta["dim"], inst = meta["instance"],
                  run = meta["run"];
        const double fv = meta["final_value"];
        const std::string opt = meta["optimizer"];
        out << id << ',' << meta["sampler"].get<std::string>() << ',' << meta["n"] << ',' << d
            << ',' << inst << ',' << run << ',' << opt << ',' << fv << ',';
        RunInfo info{fv, std::nullopt, mp.stem().string() + ".csv", meta["budget"]};
        auto it = bounds.find({id, d, inst});
        if (it == bounds.end()) {
            std::cerr << "warning: no bound for F" << id << " d=" << d << " instance " << inst
                      << "; R omitted\n";
            out << ",,\n";
        } else {
            const auto& b = it->second;
            const double r = stardisc::relative_gap(b.bound, fv, b.source);
            info.r = r;
            out << b.bound << ',' << (b.source == stardisc::BoundSource::Dem ? "dem" : "ta") << ','
                << r << '\n';
        }
        scenarios[{id, d, opt}].push_back(std::move(info));
    }

    out << "\nscenario_medians\nproblem_id,dim,optimizer,runs,median_final,median_R\n";
    for (auto& [key, runs] : scenarios) {
        auto med = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            const size_t m = v.size();
            return m == 0 ? std::numeric_limits<double>::quiet_NaN()
                          : (m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]));
        };
        std::vector<double> finals, rs;
        for (const auto& r : runs) {
            finals.push_back(r.final_value);
            if (r.r) rs.push_back(*r.r);
        }
        out << key.problem_id << ',' << key.dim << ',' << key.optimizer << ',' << runs.size()
            << ',' << med(finals) << ',';
        if (rs.empty())
            out << "\n";
        else
            out << med(rs) << '\n';
    }

    if (!targets_arg.empty()) {
        std::vector<double> targets;
        std::istringstream ls(targets_arg);
        std::string item;
        while (std::getline(ls, item, ',')) targets.push_back(std::stod(item));
        out << "\nert\nproblem_id,dim,optimizer,target,ert\n";
        for (auto& [key, runs] : scenarios) {
            std::vector<stardisc::Trajectory> trajs;
            std::uint64_t budget = 0;
            for (const auto& r : runs) {
                trajs.push_back(stardisc::load_trajectory((fs::path(logs_dir) / r.traj).string()));
                budget = r.budget;
            }
            for (double tgt : targets) {
                const double e = stardisc::ert(trajs, tgt, budget);
                out << key.problem_id << ',' << key.dim << ',' << key.optimizer << ',' << tgt
                    << ',';
                if (std::isinf(e))
                    out << "inf\n";
                else
                    out << e << '\n';
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stardisc: exact and heuristic L-infinity star discrepancy computation "
                 "and black-box optimizer benchmarking"};
    app.require_subcommand(1);
    const int hw_threads = std::max(1u, std::thread::hardware_concurrency());

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a point set");
    std::string gen_sampler, gen_out;
    int gen_n = 0, gen_d = 0, gen_instance = 1;
    gen->add_option("--sampler", gen_sampler, "uniform, halton or sobol")->required();
    gen->add_option("-n", gen_n, "number of points")->required();
    gen->add_option("-d", gen_d, "dimension")->required();
    gen->add_option("--instance", gen_instance, "instance id (controls randomization)");
    gen->add_option("-o", gen_out, "output file (default: stdout)");

    // exact
    auto* exact = app.add_subcommand("exact", "Compute the exact star discrepancy");
    std::string exact_points, exact_algo = "dem";
    int exact_threads = hw_threads;
    double exact_cutoff = 1e8;
    std::uint64_t exact_guard = 100000000ull;
    bool exact_prune = false;
    exact->add_option("--points", exact_points, "point-set file")->required();
    exact->add_option("--algo", exact_algo, "dem or bruteforce");
    exact->add_option("--threads", exact_threads, "worker threads");
    exact->add_option("--cutoff", exact_cutoff, "parallel task cutoff (dem)");
    exact->add_option("--guard", exact_guard, "grid-node guard (bruteforce)");
    exact->add_flag("--prune", exact_prune, "critical-box pruning (bruteforce)");

    // ta
    auto* ta = app.add_subcommand("ta", "Threshold Accepting lower bound");
    std::string ta_points, ta_traj;
    std::uint64_t ta_budget = 100000, ta_seed = 1;
    ta->add_option("--points", ta_points, "point-set file")->required();
    ta->add_option("--budget", ta_budget, "evaluation budget");
    ta->add_option("--seed", ta_seed, "random seed");
    ta->add_option("--report-trajectory", ta_traj, "write a best-so-far CSV");

    // bench
    auto* bench = app.add_subcommand("bench", "Run the benchmark protocol");
    std::string bench_suite = "default", bench_dims = "2,3", bench_opts = "rs,de,pso,spsa",
                bench_problems, bench_out = "bench_logs";
    int bench_runs = 10, bench_instances = 10;
    std::uint64_t bench_seed = 1, bench_budget = 0;
    bench->add_option("--suite", bench_suite, "problem suite (default)");
    bench->add_option("--problems", bench_problems, "explicit problem ids, comma separated");
    bench->add_option("--dims", bench_dims, "dimensions, comma separated");
    bench->add_option("--optimizers", bench_opts, "optimizer ids, comma separated");
    bench->add_option("--runs", bench_runs, "runs per instance");
    bench->add_option("--instances", bench_instances, "instances per problem");
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("--budget", bench_budget, "override budget (default 2500*d)");
    bench->add_option("--out", bench_out, "output directory")->required();

    // report
    auto* report = app.add_subcommand("report", "Aggregate benchmark logs");
    std::string report_logs, report_bounds, report_out = "report.csv", report_targets;
    report->add_option("--logs", report_logs, "log directory from bench")->required();
    report->add_option("--bounds", report_bounds, "bounds CSV (problem_id,dim,instance,bound,source)");
    report->add_option("--out", report_out, "output CSV");
    report->add_option("--targets", report_targets, "ERT target values, comma separated");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(gen_sampler, gen_n, gen_d, gen_instance, gen_out);
        if (exact->parsed())
            return cmd_exact(exact_points, exact_algo, exact_threads, exact_cutoff, exact_guard,
                             exact_prune);
        if (ta->parsed()) return cmd_ta(ta_points, ta_budget, ta_seed, ta_traj);
        if (bench->parsed())
            return cmd_bench(bench_suite, bench_dims, bench_opts, bench_problems, bench_runs,
                             bench_instances, bench_seed, bench_budget, bench_out);
        if (report->parsed())
            return cmd_report(report_logs, report_bounds, report_out, report_targets);
    } catch (const stardisc::GuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        if (msg.find("exceeds the exact DEM bound") != std::string::npos) return kExitConsistency;
        return kExitValidation;
    }
    return 0;
}
