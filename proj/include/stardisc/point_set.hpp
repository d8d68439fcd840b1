#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stardisc {

// A corner q in [0,1]^d of an anchored box [0,q) / [0,q].
using Query = std::vector<double>;

// 1-based index vector into the closure grids; entry j addresses the
// idx[j]-th smallest element of grid(j).
using GridIndex = std::vector<int>;

// Immutable set of n points in [0,1)^d together with the per-dimension
// closure grids (sorted unique coordinates plus 1).
class PointSet {
public:
    PointSet(int dim, std::vector<std::vector<double>> points);

    // Text format: one point per line, whitespace-separated coordinates,
    // '#' starts a comment line.
    static PointSet parse(std::istream& in);
    static PointSet load(const std::string& path);
    void write(std::ostream& out) const;
    void save(const std::string& path) const;

    int dim() const { return dim_; }
    int size() const { return n_; }
    double coord(int i, int j) const { return coords_[static_cast<size_t>(i) * dim_ + j]; }
    std::vector<double> point(int i) const;

    // Sorted unique coordinate values of dimension j, with 1 appended.
    const std::vector<double>& grid(int j) const { return grids_[j]; }
    int grid_size(int j) const { return static_cast<int>(grids_[j].size()); }

    // Product of grid sizes, saturating at max(); number of closure grid nodes.
    std::uint64_t grid_nodes() const;

private:
    int dim_;
    int n_;
    std::vector<double> coords_;  // row-major n x d
    std::vector<std::vector<double>> grids_;
};

double volume(const Query& q);
int count_open(const PointSet& p, const Query& q);
int count_closed(const PointSet& p, const Query& q);
double delta(const PointSet& p, const Query& q);
double bar_delta(const PointSet& p, const Query& q);
double local_disc_abs(const PointSet& p, const Query& q);
double local_disc_two_sided(const PointSet& p, const Query& q);
Query decode_grid(const PointSet& p, const GridIndex& g);

// Inverse of decode_grid for values that lie on the grid; throws if not found.
GridIndex encode_grid(const PointSet& p, const Query& q);

}  // namespace stardisc
