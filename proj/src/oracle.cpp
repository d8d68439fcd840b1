#include "stardisc/oracle.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace stardisc {

bool candidate_better(double value, BoxSide side, const GridIndex& idx,
                      double best_value, BoxSide best_side, const GridIndex& best_idx) {
    if (value != best_value) return value > best_value;
    if (side != best_side) return side == BoxSide::Closed;
    return std::lexicographical_compare(idx.begin(), idx.end(), best_idx.begin(), best_idx.end());
}

GuardExceeded::GuardExceeded(std::uint64_t required_, std::uint64_t guard_)
    : std::runtime_error("brute-force enumeration refused: " + std::to_string(required_) +
                         " grid nodes required, guard is " + std::to_string(guard_)),
      required(required_),
      guard(guard_) {}

namespace {

struct Best {
    double value = -2.0;
    BoxSide side = BoxSide::Open;
    GridIndex idx;

    void offer(double v, BoxSide s, const GridIndex& i) {
        if (idx.empty() || candidate_better(v, s, i, value, side, idx)) {
            value = v;
            side = s;
            idx = i;
        }
    }
    void merge(const Best& o) {
        if (!o.idx.empty()) offer(o.value, o.side, o.idx);
    }
};

class Enumerator {
public:
    Enumerator(const PointSet& p, bool prune) : p_(p), prune_(prune), idx_(p.dim()) {}

    // Enumerate all corners whose first-dimension grid index lies in
    // [first_lo, first_hi) (1-based, half-open).
    Best run(int first_lo, int first_hi) {
        std::vector<int> all(p_.size());
        for (int i = 0; i < p_.size(); ++i) all[i] = i;
        first_lo_ = first_lo;
        first_hi_ = first_hi;
        best_ = Best{};
        recurse(0, 1.0, true, true, true, all, all);
        return best_;
    }

private:
    void recurse(int j, double vol, bool in_gamma, bool open_ok, bool closed_ok,
                 const std::vector<int>& open_pts, const std::vector<int>& closed_pts) {
        const auto& grid = p_.grid(j);
        const int gs = static_cast<int>(grid.size());
        const int lo = (j == 0) ? first_lo_ : 1;
        const int hi = (j == 0) ? first_hi_ : gs + 1;

        // closed_pts sorted by coordinate j drives both sweeps
        std::vector<int> sorted(closed_pts);
        std::sort(sorted.begin(), sorted.end(),
                  [&](int a, int b) { return p_.coord(a, j) < p_.coord(b, j); });

        size_t lt = 0, le = 0;  // points with x_j < value / x_j <= value
        for (int k = 1; k <= gs; ++k) {
            const double v = grid[k - 1];
            while (lt < sorted.size() && p_.coord(sorted[lt], j) < v) ++lt;
            while (le < sorted.size() && p_.coord(sorted[le], j) <= v) ++le;
            if (k < lo || k >= hi) continue;

            const bool face_touched = le > lt;  // some point has x_j == v
            const bool child_open_ok = open_ok && (v == 1.0 || face_touched);
            const bool child_closed_ok = closed_ok && face_touched;
            if (prune_ && !child_open_ok && !child_closed_ok) continue;
            const bool child_in_gamma = in_gamma && k < gs;

            if (j + 1 == p_.dim()) {
                idx_[j] = k;
                const double cvol = vol * v;
                // open count: points of open_pts with x_j < v
                if (!prune_ || child_open_ok) {
                    int cnt = 0;
                    for (int i : open_pts) cnt += p_.coord(i, j) < v;
                    best_.offer(cvol - static_cast<double>(cnt) / p_.size(), BoxSide::Open, idx_);
                }
                if (child_in_gamma && (!prune_ || child_closed_ok)) {
                    best_.offer(static_cast<double>(le) / p_.size() - cvol, BoxSide::Closed, idx_);
                }
            } else {
                std::vector<int> child_closed(sorted.begin(), sorted.begin() + le);
                std::vector<int> child_open;
                child_open.reserve(lt);
                for (int i : open_pts)
                    if (p_.coord(i, j) < v) child_open.push_back(i);
                idx_[j] = k;
                recurse(j + 1, vol * v, child_in_gamma, child_open_ok, child_closed_ok,
                        child_open, child_closed);
            }
        }
    }

    const PointSet& p_;
    bool prune_;
    GridIndex idx_;
    int first_lo_ = 1, first_hi_ = 0;
    Best best_;
};

}  // namespace

DiscResult brute_force_disc(const PointSet& p, const OracleOptions& opts) {
    const std::uint64_t nodes = p.grid_nodes();
    if (nodes > opts.guard) throw GuardExceeded(nodes, opts.guard);

    const int gs0 = p.grid_size(0);
    const int threads = std::max(1, std::min(opts.threads, gs0));
    Best best;
    if (threads == 1) {
        Enumerator e(p, opts.prune);
        best = e.run(1, gs0 + 1);
    } else {
        std::vector<Best> partial(threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            const int lo = 1 + static_cast<int>(static_cast<std::int64_t>(gs0) * t / threads);
            const int hi = 1 + static_cast<int>(static_cast<std::int64_t>(gs0) * (t + 1) / threads);
            pool.emplace_back([&, t, lo, hi] {
                Enumerator e(p, opts.prune);
                partial[t] = e.run(lo, hi);
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& b : partial) best.merge(b);
    }
    return DiscResult{best.value, decode_grid(p, best.idx), best.idx, best.side};
}

}  // namespace stardisc
