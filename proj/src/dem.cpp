#include "stardisc/dem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stardisc {

CellBox root_cell(const PointSet& p) {
    CellBox c;
    c.depth = 0;
    c.lower.assign(p.dim(), 0.0);
    c.upper.assign(p.dim(), 1.0);
    c.active.resize(p.size());
    std::iota(c.active.begin(), c.active.end(), 0);
    c.internal_dim.assign(p.size(), -1);
    return c;
}

std::vector<CellBox> decompose(const PointSet& p, const CellBox& cell) {
    const int j = cell.depth;
    if (j >= p.dim()) throw std::invalid_argument("decompose: cell already fully decomposed");
    const int s = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(p.size()))));
    const size_t m = cell.active.size();

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return p.coord(cell.active[a], j) < p.coord(cell.active[b], j);
    });

    std::vector<double> mandatory;
    for (size_t k = 0; k < m; ++k)
        if (cell.internal_dim[k] >= 0) mandatory.push_back(p.coord(cell.active[k], j));
    std::sort(mandatory.begin(), mandatory.end());
    mandatory.erase(std::unique(mandatory.begin(), mandatory.end()), mandatory.end());

    // Greedy cuts: close a slab at every mandatory coordinate, and as soon as
    // it holds s points above the previous cut.
    std::vector<double> splits;
    size_t mi = 0, t = 0;
    int cnt = 0;
    while (t < m) {
        const double v = p.coord(cell.active[order[t]], j);
        while (mi < mandatory.size() && mandatory[mi] < v) {
            splits.push_back(mandatory[mi++]);
            cnt = 0;
        }
        size_t g = t;
        while (g < m && p.coord(cell.active[order[g]], j) == v) ++g;
        cnt += static_cast<int>(g - t);
        if (mi < mandatory.size() && mandatory[mi] == v) {
            splits.push_back(v);
            cnt = 0;
            ++mi;
        } else if (cnt >= s) {
            splits.push_back(v);
            cnt = 0;
        }
        t = g;
    }
    while (mi < mandatory.size()) splits.push_back(mandatory[mi++]);
    if (splits.empty() || splits.back() != 1.0) splits.push_back(1.0);
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

    // Sorted copies of the active bookkeeping; children take prefixes.
    std::vector<int> sorted_active(m);
    std::vector<signed char> sorted_marks(m);
    for (size_t k = 0; k < m; ++k) {
        sorted_active[k] = cell.active[order[k]];
        sorted_marks[k] = cell.internal_dim[order[k]];
    }

    std::vector<CellBox> children;
    children.reserve(splits.size());
    double lo = 0.0;
    size_t tp = 0;
    for (double c : splits) {
        const size_t tp_lo = tp;  // first index with coordinate > lo
        while (tp < m && p.coord(sorted_active[tp], j) < c) ++tp;
        CellBox ch;
        ch.depth = j + 1;
        ch.lower = cell.lower;
        ch.upper = cell.upper;
        ch.lower[j] = lo;
        ch.upper[j] = c;
        ch.active.assign(sorted_active.begin(), sorted_active.begin() + tp);
        ch.internal_dim.assign(sorted_marks.begin(), sorted_marks.begin() + tp);
        for (size_t k = tp_lo; k < tp; ++k)
            if (p.coord(ch.active[k], j) > lo) ch.internal_dim[k] = static_cast<signed char>(j);
        children.push_back(std::move(ch));
        lo = c;
    }
    return children;
}

bool should_spawn(std::size_t n_points, int d, int depth, double cutoff) {
    const double work =
        std::pow(static_cast<double>(n_points), 1.0 + static_cast<double>(d - depth) / 2.0);
    return work >= cutoff;
}

namespace {

struct Option {
    int cnt;
    double value;
};

struct CellCand {
    bool valid = false;
    double value = -2.0;
    std::vector<double> corner;
};

struct CellEval {
    CellCand open, closed;
};

constexpr double kUnset = -1.0;  // products are positive, so -1 marks unattainable

// Per-thread scratch space for the cell dynamic program.
struct DpWorkspace {
    std::vector<std::vector<double>> amb;      // ambiguous coordinates per dimension
    std::vector<std::vector<Option>> opt_open, opt_closed;
    std::vector<double> dp;                    // (d+1) x (H+1)
    std::vector<std::int16_t> choice;          // d x (H+1)
};

// Runs one DP (max-product over open boxes or min-product over closed boxes)
// and returns the best candidate for this cell.
template <bool Maximize>
CellCand run_dp(const std::vector<std::vector<Option>>& opts, int d, int H, int base, int n,
                DpWorkspace& ws) {
    ws.dp.assign(static_cast<size_t>(d + 1) * (H + 1), kUnset);
    ws.choice.assign(static_cast<size_t>(d) * (H + 1), -1);
    ws.dp[0] = 1.0;
    for (int i = 0; i < d; ++i) {
        const double* prev = ws.dp.data() + static_cast<size_t>(i) * (H + 1);
        double* cur = ws.dp.data() + static_cast<size_t>(i + 1) * (H + 1);
        std::int16_t* ch = ws.choice.data() + static_cast<size_t>(i) * (H + 1);
        const auto& os = opts[i];
        for (int h = 0; h <= H; ++h) {
            double best = kUnset;
            std::int16_t pick = -1;
            for (size_t o = 0; o < os.size(); ++o) {
                const int hp = h - os[o].cnt;
                if (hp < 0 || prev[hp] == kUnset) continue;
                const double v = prev[hp] * os[o].value;
                if (pick < 0 || (Maximize ? v > best : v < best)) {
                    best = v;
                    pick = static_cast<std::int16_t>(o);
                }
            }
            cur[h] = best;
            ch[h] = pick;
        }
    }

    CellCand cand;
    const double* fin = ws.dp.data() + static_cast<size_t>(d) * (H + 1);
    int best_h = -1;
    for (int h = 0; h <= H; ++h) {
        if (fin[h] == kUnset) continue;
        const int pts = base + h;
        double val;
        if (Maximize) {
            val = fin[h] - static_cast<double>(pts) / n;  // open: volume - count/n
        } else {
            if (pts < 1) continue;  // empty closed box never attains the max
            val = static_cast<double>(pts) / n - fin[h];
        }
        if (best_h < 0 || val > cand.value) {
            cand.value = val;
            best_h = h;
        }
    }
    if (best_h < 0) return cand;
    cand.valid = true;
    cand.corner.resize(d);
    int h = best_h;
    for (int i = d - 1; i >= 0; --i) {
        const std::int16_t o = ws.choice[static_cast<size_t>(i) * (H + 1) + h];
        cand.corner[i] = opts[i][o].value;
        h -= opts[i][o].cnt;
    }
    return cand;
}

CellEval evaluate_cell(const PointSet& p, const CellBox& cell, DpWorkspace& ws) {
    const int d = p.dim();
    const int n = p.size();
    ws.amb.resize(d);
    ws.opt_open.resize(d);
    ws.opt_closed.resize(d);
    for (int i = 0; i < d; ++i) ws.amb[i].clear();

    int base = 0;
    for (size_t k = 0; k < cell.active.size(); ++k) {
        const signed char md = cell.internal_dim[k];
        if (md >= 0)
            ws.amb[md].push_back(p.coord(cell.active[k], md));
        else
            ++base;
    }

    int H = 0;
    for (int i = 0; i < d; ++i) {
        auto& z = ws.amb[i];
        std::sort(z.begin(), z.end());
        auto& oo = ws.opt_open[i];
        auto& oc = ws.opt_closed[i];
        oo.clear();
        oc.clear();
        oc.push_back({0, cell.lower[i]});
        size_t t = 0;
        while (t < z.size()) {
            size_t g = t;
            while (g < z.size() && z[g] == z[t]) ++g;
            oo.push_back({static_cast<int>(t), z[t]});           // strictly below z[t]
            oc.push_back({static_cast<int>(g), z[t]});           // weakly below z[t]
            t = g;
        }
        oo.push_back({static_cast<int>(z.size()), cell.upper[i]});
        H += static_cast<int>(z.size());
    }

    CellEval ev;
    ev.open = run_dp<true>(ws.opt_open, d, H, base, n, ws);
    ev.closed = run_dp<false>(ws.opt_closed, d, H, base, n, ws);
    return ev;
}

struct Reduction {
    bool valid = false;
    double value = -2.0;
    BoxSide side = BoxSide::Open;
    GridIndex idx;
    std::uint64_t cells = 0;

    void offer(const PointSet& p, const CellCand& c, BoxSide s) {
        if (!c.valid) return;
        GridIndex gi = encode_grid(p, c.corner);
        if (!valid || candidate_better(c.value, s, gi, value, side, idx)) {
            valid = true;
            value = c.value;
            side = s;
            idx = std::move(gi);
        }
    }
    void merge(const Reduction& o) {
        cells += o.cells;
        if (!o.valid) return;
        if (!valid || candidate_better(o.value, o.side, o.idx, value, side, idx)) {
            valid = true;
            value = o.value;
            side = o.side;
            idx = o.idx;
        }
    }
};

Reduction recurse(const PointSet& p, CellBox cell, const DemOptions& opts, DpWorkspace& ws) {
    Reduction red;
    if (cell.depth == p.dim()) {
        CellEval ev = evaluate_cell(p, cell, ws);
        red.cells = 1;
        red.offer(p, ev.open, BoxSide::Open);
        red.offer(p, ev.closed, BoxSide::Closed);
        return red;
    }
    auto children = decompose(p, cell);
    cell.active.clear();
    cell.internal_dim.clear();

    const size_t nc = children.size();
    std::vector<Reduction> spawned(nc);
    std::vector<char> used(nc, 0);
    for (size_t k = 0; k < nc; ++k) {
#ifdef _OPENMP
        const bool sp = opts.threads > 1 &&
                        should_spawn(children[k].active.size(), p.dim(), children[k].depth, opts.cutoff);
#else
        const bool sp = false;
#endif
        if (sp) {
            used[k] = 1;
#ifdef _OPENMP
#pragma omp task default(shared) firstprivate(k)
            {
                DpWorkspace tws;
                spawned[k] = recurse(p, std::move(children[k]), opts, tws);
            }
#endif
        } else {
            red.merge(recurse(p, std::move(children[k]), opts, ws));
        }
    }
#ifdef _OPENMP
#pragma omp taskwait
#endif
    for (size_t k = 0; k < nc; ++k)
        if (used[k]) red.merge(spawned[k]);
    return red;
}

}  // namespace

double dp_cell(const PointSet& p, const CellBox& cell) {
    if (cell.depth != p.dim()) throw std::invalid_argument("dp_cell: cell not fully decomposed");
    DpWorkspace ws;
    CellEval ev = evaluate_cell(p, cell, ws);
    double best = -std::numeric_limits<double>::infinity();
    if (ev.open.valid) best = std::max(best, ev.open.value);
    if (ev.closed.valid) best = std::max(best, ev.closed.value);
    return best;
}

DemResult dem_disc(const PointSet& p, const DemOptions& opts) {
    if (opts.threads < 1) throw std::invalid_argument("thread count must be positive");
    Reduction red;
#ifdef _OPENMP
    if (opts.threads > 1) {
#pragma omp parallel num_threads(opts.threads)
#pragma omp single
        {
            DpWorkspace ws;
            red = recurse(p, root_cell(p), opts, ws);
        }
    } else
#endif
    {
        DpWorkspace ws;
        red = recurse(p, root_cell(p), opts, ws);
    }
    return DemResult{red.value, decode_grid(p, red.idx), red.idx, red.side, red.cells};
}

}  // namespace stardisc
