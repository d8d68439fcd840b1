#include "stardisc/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace stardisc {

PointSet::PointSet(int dim, std::vector<std::vector<double>> points)
    : dim_(dim), n_(static_cast<int>(points.size())) {
    if (dim_ < 1) throw std::invalid_argument("PointSet: dimension must be positive");
    if (n_ < 1) throw std::invalid_argument("PointSet: empty point set");
    coords_.reserve(static_cast<size_t>(n_) * dim_);
    for (const auto& pt : points) {
        if (static_cast<int>(pt.size()) != dim_)
            throw std::invalid_argument("PointSet: point dimension mismatch");
        for (double c : pt) {
            if (!(c >= 0.0 && c < 1.0))
                throw std::invalid_argument("PointSet: coordinate outside [0,1): " + std::to_string(c));
            coords_.push_back(c);
        }
    }
    grids_.resize(dim_);
    for (int j = 0; j < dim_; ++j) {
        auto& g = grids_[j];
        g.reserve(static_cast<size_t>(n_) + 1);
        for (int i = 0; i < n_; ++i) g.push_back(coord(i, j));
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        g.push_back(1.0);
    }
}

std::vector<double> PointSet::point(int i) const {
    return {coords_.begin() + static_cast<size_t>(i) * dim_,
            coords_.begin() + static_cast<size_t>(i + 1) * dim_};
}

PointSet PointSet::parse(std::istream& in) {
    std::vector<std::vector<double>> pts;
    std::string line;
    int dim = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> pt;
        double v;
        while (ls >> v) pt.push_back(v);
        if (!ls.eof())
            throw std::invalid_argument("point file line " + std::to_string(lineno) + ": malformed number");
        if (dim < 0) dim = static_cast<int>(pt.size());
        if (static_cast<int>(pt.size()) != dim)
            throw std::invalid_argument("point file line " + std::to_string(lineno) + ": inconsistent dimension");
        for (double c : pt) {
            if (c == 1.0)
                throw std::invalid_argument("point file line " + std::to_string(lineno) +
                                            ": coordinate 1.0 not allowed, points must lie in [0,1)");
            if (!(c >= 0.0 && c < 1.0))
                throw std::invalid_argument("point file line " + std::to_string(lineno) +
                                            ": coordinate outside [0,1)");
        }
        pts.push_back(std::move(pt));
    }
    if (pts.empty()) throw std::invalid_argument("point file contains no points");
    return PointSet(dim, std::move(pts));
}

PointSet PointSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open point file: " + path);
    return parse(in);
}

void PointSet::write(std::ostream& out) const {
    out.precision(17);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            if (j) out << ' ';
            out << coord(i, j);
        }
        out << '\n';
    }
}

void PointSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write point file: " + path);
    write(out);
}

std::uint64_t PointSet::grid_nodes() const {
    std::uint64_t prod = 1;
    for (int j = 0; j < dim_; ++j) {
        std::uint64_t s = grids_[j].size();
        if (prod > std::numeric_limits<std::uint64_t>::max() / s)
            return std::numeric_limits<std::uint64_t>::max();
        prod *= s;
    }
    return prod;
}

static void check_query(const PointSet& p, const Query& q) {
    if (static_cast<int>(q.size()) != p.dim())
        throw std::invalid_argument("query dimension mismatch");
    for (double c : q)
        if (!(c >= 0.0 && c <= 1.0))
            throw std::invalid_argument("query coordinate outside [0,1]");
}

double volume(const Query& q) {
    double v = 1.0;
    for (double c : q) v *= c;
    return v;
}

int count_open(const PointSet& p, const Query& q) {
    check_query(p, q);
    int cnt = 0;
    for (int i = 0; i < p.size(); ++i) {
        bool in = true;
        for (int j = 0; j < p.dim(); ++j)
            if (p.coord(i, j) >= q[j]) { in = false; break; }
        cnt += in;
    }
    return cnt;
}

int count_closed(const PointSet& p, const Query& q) {
    check_query(p, q);
    int cnt = 0;
    for (int i = 0; i < p.size(); ++i) {
        bool in = true;
        for (int j = 0; j < p.dim(); ++j)
            if (p.coord(i, j) > q[j]) { in = false; break; }
        cnt += in;
    }
    return cnt;
}

double delta(const PointSet& p, const Query& q) {
    return volume(q) - static_cast<double>(count_open(p, q)) / p.size();
}

double bar_delta(const PointSet& p, const Query& q) {
    return static_cast<double>(count_closed(p, q)) / p.size() - volume(q);
}

double local_disc_abs(const PointSet& p, const Query& q) {
    return std::fabs(static_cast<double>(count_open(p, q)) / p.size() - volume(q));
}

double local_disc_two_sided(const PointSet& p, const Query& q) {
    return std::max(delta(p, q), bar_delta(p, q));
}

Query decode_grid(const PointSet& p, const GridIndex& g) {
    if (static_cast<int>(g.size()) != p.dim())
        throw std::invalid_argument("grid index dimension mismatch");
    Query q(p.dim());
    for (int j = 0; j < p.dim(); ++j) {
        if (g[j] < 1 || g[j] > p.grid_size(j))
            throw std::out_of_range("grid index out of range in dimension " + std::to_string(j));
        q[j] = p.grid(j)[g[j] - 1];
    }
    return q;
}

GridIndex encode_grid(const PointSet& p, const Query& q) {
    check_query(p, q);
    GridIndex g(p.dim());
    for (int j = 0; j < p.dim(); ++j) {
        const auto& grid = p.grid(j);
        auto it = std::lower_bound(grid.begin(), grid.end(), q[j]);
        if (it == grid.end() || *it != q[j])
            throw std::invalid_argument("query coordinate not on the grid");
        g[j] = static_cast<int>(it - grid.begin()) + 1;
    }
    return g;
}

}  // namespace stardisc
