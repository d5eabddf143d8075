#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fcover/geometry.hpp"

namespace fcover {

inline constexpr std::int64_t kDefaultNodeCap = 65536;

/// Regular tensor lattice over a rectangular window in dimension 1 or 2.
/// Nodes are lo[k] + i*step[k] along each axis; the full tensor product is
/// enumerated row-major (axis 0 fastest).
class GridSpec {
public:
    GridSpec() = default;

    static GridSpec make_1d(double lo, double hi, std::int64_t n,
                            std::int64_t node_cap = kDefaultNodeCap) {
        GridSpec g;
        g.dim_ = 1;
        g.lo_ = Point(lo);
        g.hi_ = Point(hi);
        g.n_ = {n, 1};
        g.validate(node_cap);
        return g;
    }

    static GridSpec make_2d(double lo1, double hi1, std::int64_t n1, double lo2, double hi2,
                            std::int64_t n2, std::int64_t node_cap = kDefaultNodeCap) {
        GridSpec g;
        g.dim_ = 2;
        g.lo_ = Point(lo1, lo2);
        g.hi_ = Point(hi1, hi2);
        g.n_ = {n1, n2};
        g.validate(node_cap);
        return g;
    }

    /// Symmetric window [-w,w]^dim with the same node count per axis;
    /// always contains the origin as a node (n odd is enforced).
    static GridSpec symmetric(int dim, double w, std::int64_t n,
                              std::int64_t node_cap = kDefaultNodeCap) {
        if (n % 2 == 0) n += 1;
        return dim == 1 ? make_1d(-w, w, n, node_cap) : make_2d(-w, w, n, -w, w, n, node_cap);
    }

    int dim() const { return dim_; }
    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    std::int64_t points(int axis) const { return n_[static_cast<size_t>(axis)]; }
    std::int64_t size() const { return n_[0] * n_[1]; }

    double step(int axis) const {
        return (hi_[axis] - lo_[axis]) / static_cast<double>(n_[static_cast<size_t>(axis)] - 1);
    }
    double max_step() const { return dim_ == 1 ? step(0) : std::max(step(0), step(1)); }

    double coord(int axis, std::int64_t i) const {
        return lo_[axis] + static_cast<double>(i) * step(axis);
    }

    Point node(std::int64_t flat) const {
        if (dim_ == 1) return Point(coord(0, flat));
        return Point(coord(0, flat % n_[0]), coord(1, flat / n_[0]));
    }

    std::int64_t flat_index(std::int64_t i0, std::int64_t i1 = 0) const { return i0 + n_[0] * i1; }

    /// Quadrature weight of node (tensor trapezoid rule: boundary nodes get
    /// half weight along each axis).
    double quad_weight(std::int64_t flat) const {
        double w = axis_weight(0, dim_ == 1 ? flat : flat % n_[0]);
        if (dim_ == 2) w *= axis_weight(1, flat / n_[0]);
        return w;
    }

    /// Volume of one full cell.
    double cell_volume() const { return dim_ == 1 ? step(0) : step(0) * step(1); }

    /// Index of the node nearest to p (ties toward lower index).
    std::int64_t nearest_node(const Point& p) const {
        std::int64_t idx[2] = {0, 0};
        for (int k = 0; k < dim_; ++k) {
            double u = (p[k] - lo_[k]) / step(k);
            std::int64_t i = static_cast<std::int64_t>(std::floor(u + 0.5));
            if (i < 0) i = 0;
            if (i >= n_[static_cast<size_t>(k)]) i = n_[static_cast<size_t>(k)] - 1;
            idx[k] = i;
        }
        return flat_index(idx[0], idx[1]);
    }

    bool same_lattice(const GridSpec& o) const {
        return dim_ == o.dim_ && lo_ == o.lo_ && hi_ == o.hi_ && n_ == o.n_;
    }

    bool contains(const Point& p, double tol = 0.0) const {
        for (int k = 0; k < dim_; ++k)
            if (p[k] < lo_[k] - tol || p[k] > hi_[k] + tol) return false;
        return true;
    }

    std::string describe() const;

private:
    void validate(std::int64_t node_cap) const {
        for (int k = 0; k < dim_; ++k) {
            if (!(lo_[k] < hi_[k])) throw std::invalid_argument("grid window is empty on axis " + std::to_string(k));
            if (n_[static_cast<size_t>(k)] < 2)
                throw std::invalid_argument("grid needs at least 2 points per axis");
        }
        if (size() > node_cap)
            throw std::invalid_argument("grid has " + std::to_string(size()) +
                                        " nodes, exceeding the cap of " + std::to_string(node_cap));
    }

    double axis_weight(int axis, std::int64_t i) const {
        const double s = step(axis);
        return (i == 0 || i == n_[static_cast<size_t>(axis)] - 1) ? s / 2.0 : s;
    }

    int dim_ = 1;
    Point lo_{0.0};
    Point hi_{1.0};
    std::array<std::int64_t, 2> n_{2, 1};
};

}  // namespace fcover
