#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vexlab {

// Points live in R^1 or R^2; unused coordinates are zero.
using Point = std::array<double, 2>;

/// Axis-aligned box with a uniform cell-centered grid.
struct BoxDomain {
    int dim = 1;
    std::array<double, 2> lower{0.0, 0.0};
    std::array<double, 2> upper{1.0, 0.0};
    std::array<int, 2> resolution{1, 1};

    BoxDomain() = default;

    static BoxDomain interval(double lo, double hi, int n) {
        BoxDomain b;
        b.dim = 1;
        b.lower = {lo, 0.0};
        b.upper = {hi, 0.0};
        b.resolution = {n, 1};
        b.validate();
        return b;
    }

    static BoxDomain rectangle(Point lo, Point hi, int nx, int ny) {
        BoxDomain b;
        b.dim = 2;
        b.lower = lo;
        b.upper = hi;
        b.resolution = {nx, ny};
        b.validate();
        return b;
    }

    void validate() const {
        if (dim < 1 || dim > 2)
            throw std::invalid_argument("BoxDomain: dimension must be 1 or 2");
        for (int a = 0; a < dim; ++a) {
            if (!(upper[a] > lower[a]))
                throw std::invalid_argument("BoxDomain: upper must exceed lower on axis " +
                                            std::to_string(a));
            if (resolution[a] < 1)
                throw std::invalid_argument("BoxDomain: resolution must be positive on axis " +
                                            std::to_string(a));
        }
    }

    double cell_size(int axis) const {
        return (upper[axis] - lower[axis]) / resolution[axis];
    }

    double max_cell_size() const {
        double h = cell_size(0);
        if (dim == 2) h = std::max(h, cell_size(1));
        return h;
    }

    double cell_volume() const {
        double v = cell_size(0);
        if (dim == 2) v *= cell_size(1);
        return v;
    }

    double volume() const {
        double v = upper[0] - lower[0];
        if (dim == 2) v *= upper[1] - lower[1];
        return v;
    }

    double diameter() const {
        double dx = upper[0] - lower[0];
        if (dim == 1) return dx;
        double dy = upper[1] - lower[1];
        return std::sqrt(dx * dx + dy * dy);
    }

    std::int64_t cell_count() const {
        std::int64_t n = resolution[0];
        if (dim == 2) n *= resolution[1];
        return n;
    }

    // Flat index is row-major: i = ix + resolution[0]*iy.
    Point center(std::int64_t flat) const {
        Point p{0.0, 0.0};
        const std::int64_t ix = flat % resolution[0];
        p[0] = lower[0] + (static_cast<double>(ix) + 0.5) * cell_size(0);
        if (dim == 2) {
            const std::int64_t iy = flat / resolution[0];
            p[1] = lower[1] + (static_cast<double>(iy) + 0.5) * cell_size(1);
        }
        return p;
    }

    bool same_grid(const BoxDomain& o) const {
        return dim == o.dim && lower == o.lower && upper == o.upper && resolution == o.resolution;
    }
};

inline double distance(const Point& a, const Point& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace vexlab
