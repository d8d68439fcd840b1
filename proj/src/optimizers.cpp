#include "stardisc/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

namespace stardisc {

namespace {

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void clamp_unit(std::vector<double>& x) {
    for (double& c : x) c = std::clamp(c, 0.0, 1.0);
}

struct Harness {
    const Objective& objective;
    std::uint64_t budget;
    OptResult res{-2.0, {}, {}, 0};

    bool exhausted() const { return res.evaluations >= budget; }

    double eval(std::vector<double> x) {
        clamp_unit(x);
        const double v = objective(x);
        ++res.evaluations;
        if (res.best_x.empty() || v > res.best) {
            res.best = v;
            res.best_x = x;
            res.trajectory.records.emplace_back(res.evaluations, v);
        }
        return v;
    }

    OptResult finish() {
        if (!res.trajectory.records.empty() &&
            res.trajectory.records.back().first != res.evaluations)
            res.trajectory.records.emplace_back(res.evaluations, res.best);
        return std::move(res);
    }
};

std::vector<double> random_point(std::mt19937_64& rng, int dim) {
    std::vector<double> x(dim);
    for (double& c : x) c = u01(rng);
    return x;
}

// Acklam's rational approximation of the standard normal quantile.
double norm_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    p = std::clamp(p, 1e-300, 1.0 - 1e-16);
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// The population optimizers (de, pso) search a standardized internal domain
// [0,1]^d; a candidate u maps to the evaluated point through a centered
// Gaussian quantile with scale 1/kStandardizedScale, clipped to the box.
// This emulates the bounded-variable standardization used by common
// black-box optimization frameworks.
constexpr double kStandardizedScale = 14.0;

std::vector<double> to_box(const std::vector<double>& u) {
    std::vector<double> x(u.size());
    for (size_t j = 0; j < u.size(); ++j)
        x[j] = std::clamp(0.5 + norm_quantile(u[j]) / kStandardizedScale, 0.0, 1.0);
    return x;
}

void run_random_search(Harness& h, int dim, std::mt19937_64& rng) {
    while (!h.exhausted()) h.eval(random_point(rng, dim));
}

void run_de(Harness& h, int dim, std::mt19937_64& rng) {
    // rand/1/bin
    const double F = 0.5, CR = 0.9;
    const size_t np = static_cast<size_t>(10) * dim;
    std::vector<std::vector<double>> pop;
    std::vector<double> fit;
    for (size_t i = 0; i < np && !h.exhausted(); ++i) {
        pop.push_back(random_point(rng, dim));
        fit.push_back(h.eval(to_box(pop.back())));
    }
    if (pop.size() < 4) {  // degenerate budget, fall back to random sampling
        run_random_search(h, dim, rng);
        return;
    }
    while (!h.exhausted()) {
        for (size_t i = 0; i < pop.size() && !h.exhausted(); ++i) {
            size_t r1, r2, r3;
            do { r1 = rng() % pop.size(); } while (r1 == i);
            do { r2 = rng() % pop.size(); } while (r2 == i || r2 == r1);
            do { r3 = rng() % pop.size(); } while (r3 == i || r3 == r2 || r3 == r1);
            std::vector<double> trial = pop[i];
            const int jrand = static_cast<int>(rng() % dim);
            for (int j = 0; j < dim; ++j)
                if (j == jrand || u01(rng) < CR)
                    trial[j] = pop[r1][j] + F * (pop[r2][j] - pop[r3][j]);
            clamp_unit(trial);
            const double v = h.eval(to_box(trial));
            if (v >= fit[i]) {
                pop[i] = std::move(trial);
                fit[i] = v;
            }
        }
    }
}

void run_pso(Harness& h, int dim, std::mt19937_64& rng) {
    const double w = 0.729, c1 = 1.49, c2 = 1.49;
    const size_t np = static_cast<size_t>(10) * dim;
    std::vector<std::vector<double>> pos, vel, pbest;
    std::vector<double> pfit;
    std::vector<double> gbest;
    double gfit = -2.0;
    for (size_t i = 0; i < np && !h.exhausted(); ++i) {
        pos.push_back(random_point(rng, dim));
        vel.emplace_back(dim, 0.0);
        const double v = h.eval(to_box(pos.back()));
        pbest.push_back(pos.back());
        pfit.push_back(v);
        if (gbest.empty() || v > gfit) {
            gbest = pos.back();
            gfit = v;
        }
    }
    while (!h.exhausted() && !pos.empty()) {
        for (size_t i = 0; i < pos.size() && !h.exhausted(); ++i) {
            for (int j = 0; j < dim; ++j) {
                vel[i][j] = w * vel[i][j] + c1 * u01(rng) * (pbest[i][j] - pos[i][j]) +
                            c2 * u01(rng) * (gbest[j] - pos[i][j]);
                pos[i][j] = std::clamp(pos[i][j] + vel[i][j], 0.0, 1.0);
            }
            const double v = h.eval(to_box(pos[i]));
            if (v > pfit[i]) {
                pfit[i] = v;
                pbest[i] = pos[i];
            }
            if (v > gfit) {
                gfit = v;
                gbest = pos[i];
            }
        }
    }
}

void run_spsa(Harness& h, int dim, std::mt19937_64& rng) {
    const double a = 0.16, c = 0.1, alpha = 0.602, gamma = 0.101;
    const double A = static_cast<double>(h.budget) / 20.0;
    std::vector<double> theta = random_point(rng, dim);
    for (std::uint64_t k = 0; !h.exhausted(); ++k) {
        const double ak = a / std::pow(static_cast<double>(k) + 1.0 + A, alpha);
        const double ck = c / std::pow(static_cast<double>(k) + 1.0, gamma);
        std::vector<double> delta(dim), plus = theta, minus = theta;
        for (int j = 0; j < dim; ++j) {
            delta[j] = (rng() & 1) ? 1.0 : -1.0;
            plus[j] += ck * delta[j];
            minus[j] -= ck * delta[j];
        }
        const double fp = h.eval(plus);
        if (h.exhausted()) break;
        const double fm = h.eval(minus);
        const double diff = (fp - fm) / (2.0 * ck);
        for (int j = 0; j < dim; ++j)
            theta[j] = std::clamp(theta[j] + ak * diff / delta[j], 0.0, 1.0);
    }
}

}  // namespace

std::vector<std::string> optimizer_ids() { return {"random-search", "de", "pso", "spsa"}; }

OptResult optimize(const std::string& optimizer, const Objective& objective, int dim,
                   std::uint64_t budget, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    Harness h{objective, budget};
    std::mt19937_64 rng(seed);
    if (optimizer == "random-search")
        run_random_search(h, dim, rng);
    else if (optimizer == "de")
        run_de(h, dim, rng);
    else if (optimizer == "pso")
        run_pso(h, dim, rng);
    else if (optimizer == "spsa")
        run_spsa(h, dim, rng);
    else {
        std::string ids;
        for (const auto& id : optimizer_ids()) ids += (ids.empty() ? "" : ", ") + id;
        throw std::invalid_argument("unknown optimizer '" + optimizer + "' (available: " + ids + ")");
    }
    return h.finish();
}

OptResult optimize_subprocess(const std::string& command, const Objective& objective, int dim,
                              std::uint64_t budget) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0)
        throw std::runtime_error("optimize_subprocess: pipe failed");
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("optimize_subprocess: fork failed");
    if (pid == 0) {
        dup2(to_child[0], 0);
        dup2(from_child[1], 1);
        close(to_child[0]);
        close(to_child[1]);
        close(from_child[0]);
        close(from_child[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    FILE* out = fdopen(to_child[1], "w");
    FILE* in = fdopen(from_child[0], "r");

    Harness h{objective, budget};
    std::vector<double> x(dim);
    while (!h.exhausted()) {
        bool ok = true;
        for (int j = 0; j < dim; ++j)
            if (fscanf(in, "%lf", &x[j]) != 1) { ok = false; break; }
        if (!ok) break;  // solver finished early
        const double v = h.eval(x);
        fprintf(out, "%.17g\n", v);
        fflush(out);
    }
    fclose(out);
    fclose(in);
    int status = 0;
    waitpid(pid, &status, 0);
    if (h.res.best_x.empty())
        throw std::runtime_error("external solver produced no queries");
    return h.finish();
}

}  // namespace stardisc
