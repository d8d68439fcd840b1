#include "stardisc/ta.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace stardisc {

Query snap_down(const PointSet& p, const GridIndex& g) {
    Query q = decode_grid(p, g);
    Query out(p.dim(), 0.0);
    for (int i = 0; i < p.size(); ++i) {
        bool in = true;
        for (int j = 0; j < p.dim(); ++j)
            if (p.coord(i, j) > q[j]) { in = false; break; }
        if (!in) continue;
        for (int j = 0; j < p.dim(); ++j) out[j] = std::max(out[j], p.coord(i, j));
    }
    return out;
}

Query snap_up(const PointSet& p, const GridIndex& g) {
    Query q = decode_grid(p, g);
    for (int j = 0; j < p.dim(); ++j) {
        // smallest coordinate of a point kept out of the open box by
        // dimension j alone
        double limit = 1.0;
        for (int i = 0; i < p.size(); ++i) {
            if (p.coord(i, j) < q[j]) continue;
            bool blocked_elsewhere = false;
            for (int l = 0; l < p.dim(); ++l)
                if (l != j && p.coord(i, l) >= q[l]) { blocked_elsewhere = true; break; }
            if (!blocked_elsewhere) limit = std::min(limit, p.coord(i, j));
        }
        q[j] = limit;
    }
    return q;
}

namespace {

struct Evaluator {
    const PointSet& p;
    std::uint64_t budget;
    std::uint64_t used = 0;
    double best = -2.0;
    Query best_q;
    std::vector<std::pair<std::uint64_t, double>> improvements;

    bool spend() {
        if (used >= budget) return false;
        ++used;
        return true;
    }

    void record(double v, const Query& q) {
        if (v > best) {
            best = v;
            best_q = q;
            improvements.emplace_back(used, v);
        }
    }

    // Round a query up to the enclosing grid corner (0 maps to the first
    // grid value).
    GridIndex to_grid(const Query& q) const {
        GridIndex g(p.dim());
        for (int j = 0; j < p.dim(); ++j) {
            const auto& grid = p.grid(j);
            g[j] = 1 + static_cast<int>(std::lower_bound(grid.begin(), grid.end(), q[j]) -
                                        grid.begin());
            g[j] = std::min<int>(g[j], static_cast<int>(grid.size()));
        }
        return g;
    }

    // Best of raw value and the two snapped values; each counts one unit.
    // `pos` receives the grid corner of the winning query, so the chain can
    // walk onto critical boxes.
    double eval(const GridIndex& g, GridIndex* pos = nullptr) {
        double f = -2.0;
        if (pos) *pos = g;
        if (spend()) {
            Query q = decode_grid(p, g);
            f = local_disc_two_sided(p, q);
            record(f, q);
        }
        if (spend()) {
            Query qd = snap_down(p, g);
            double v = bar_delta(p, qd);
            record(v, qd);
            if (v > f) {
                f = v;
                if (pos) *pos = to_grid(qd);
            }
        }
        if (spend()) {
            Query qu = snap_up(p, g);
            double v = delta(p, qu);
            record(v, qu);
            if (v > f) {
                f = v;
                if (pos) *pos = to_grid(qu);
            }
        }
        return f;
    }
};

}  // namespace

TaResult ta_lower_bound(const PointSet& p, std::uint64_t budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("ta_lower_bound: budget must be >= 1");
    const int d = p.dim();
    const int n = p.size();
    std::mt19937_64 rng(seed);
    Evaluator ev{p, budget};

    auto random_index = [&] {
        GridIndex g(d);
        for (int j = 0; j < d; ++j) g[j] = 1 + static_cast<int>(rng() % p.grid_size(j));
        return g;
    };
    // Start corners drawn as the max of three uniform indices per coordinate:
    // discrepancy maximizers concentrate in large boxes.
    auto biased_index = [&] {
        GridIndex g(d);
        for (int j = 0; j < d; ++j) {
            const int K = p.grid_size(j);
            int m = static_cast<int>(rng() % K);
            m = std::max(m, static_cast<int>(rng() % K));
            m = std::max(m, static_cast<int>(rng() % K));
            g[j] = 1 + m;
        }
        return g;
    };

    const int w_max = std::max(1, (n + 1) / 4 + ((n + 1) % 4 != 0));
    auto neighbor = [&](const GridIndex& x, int k, int w) {
        GridIndex y = x;
        // partial Fisher-Yates for k distinct dimensions
        std::vector<int> dims(d);
        for (int j = 0; j < d; ++j) dims[j] = j;
        for (int t = 0; t < k; ++t) {
            const int r = t + static_cast<int>(rng() % (d - t));
            std::swap(dims[t], dims[r]);
            const int j = dims[t];
            const int step = 1 + static_cast<int>(rng() % w);
            const int dir = (rng() & 1) ? 1 : -1;
            y[j] = std::clamp(y[j] + dir * step, 1, p.grid_size(j));
        }
        return y;
    };

    // Winker-Fang style empirical threshold schedule: quantiles of non-positive
    // deltas over sampled neighbor pairs, 10 phases, ending at 0.
    constexpr int kPhases = 10;
    std::vector<double> schedule(kPhases, 0.0);
    {
        const std::uint64_t pairs = std::min<std::uint64_t>(1000, budget / 30);
        std::vector<double> negs;
        for (std::uint64_t i = 0; i < pairs; ++i) {
            GridIndex x = random_index();
            const double fx = ev.eval(x);
            const double fy = ev.eval(neighbor(x, std::max(1, d / 2), w_max));
            const double dv = fy - fx;
            if (dv <= 0.0) negs.push_back(dv);
        }
        std::sort(negs.begin(), negs.end());
        if (!negs.empty())
            for (int ph = 0; ph < kPhases - 1; ++ph)
                schedule[ph] = negs[negs.size() * ph / kPhases];
    }

    // independent annealing chains, each walking the full schedule
    const std::uint64_t remaining = budget > ev.used ? budget - ev.used : 0;
    const int chains = std::clamp<int>(static_cast<int>(remaining / 12000) + 1, 1, 12);
    for (int c = 0; c < chains && ev.used < budget; ++c) {
        const std::uint64_t start = ev.used;
        const std::uint64_t end =
            c == chains - 1 ? budget : std::min(budget, start + remaining / chains);
        // alternate between walking on raw corners and on critical boxes
        const bool walk_snapped = c % 2 == 0;
        GridIndex x = biased_index();
        GridIndex pos;
        double fx = ev.eval(x, &pos);
        if (walk_snapped) x = pos;
        while (ev.used < end) {
            const double frac =
                static_cast<double>(ev.used - start) / static_cast<double>(end - start);
            const double tau = schedule[std::min(kPhases - 1, static_cast<int>(frac * kPhases))];
            const int k = 1 + static_cast<int>(frac * (d - 1) + 1e-12);
            const int w = std::max(1, static_cast<int>(std::lround(w_max - frac * (w_max - 1))));
            GridIndex y = neighbor(x, std::min(k, d), w);
            const double fy = ev.eval(y, &pos);
            if (fy - fx >= tau) {
                x = walk_snapped ? std::move(pos) : std::move(y);
                fx = fy;
            }
        }
    }

    return TaResult{ev.best, ev.best_q, ev.used, std::move(ev.improvements)};
}

}  // namespace stardisc
