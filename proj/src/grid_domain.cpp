#include "vexlab/grid_domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "vexlab/sphere_constants.hpp"

namespace vexlab {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

double multilinear(const BoxDomain& d, const std::vector<double>& v, const Point& x) {
    // clamped cell-center interpolation; constant beyond the outermost centers
    double w[2][2] = {{1.0, 0.0}, {1.0, 0.0}};
    std::int64_t i0[2] = {0, 0};
    for (int a = 0; a < d.dim; ++a) {
        const double rel = (x[a] - d.lower[a]) / d.cell_size(a) - 0.5;
        const double f = std::clamp(rel, 0.0, static_cast<double>(d.resolution[a] - 1));
        const double fl = std::floor(f);
        i0[a] = std::min<std::int64_t>(static_cast<std::int64_t>(fl), d.resolution[a] - 2);
        if (d.resolution[a] == 1) i0[a] = 0;
        const double t = std::clamp(f - static_cast<double>(i0[a]), 0.0, 1.0);
        w[a][0] = 1.0 - t;
        w[a][1] = t;
    }
    if (d.dim == 1) {
        if (d.resolution[0] == 1) return v[0];
        return w[0][0] * v[static_cast<std::size_t>(i0[0])] + w[0][1] * v[static_cast<std::size_t>(i0[0] + 1)];
    }
    double acc = 0.0;
    for (int ax = 0; ax < 2; ++ax)
        for (int ay = 0; ay < 2; ++ay) {
            const std::int64_t ix = std::min<std::int64_t>(i0[0] + ax, d.resolution[0] - 1);
            const std::int64_t iy = std::min<std::int64_t>(i0[1] + ay, d.resolution[1] - 1);
            acc += w[0][ax] * w[1][ay] * v[static_cast<std::size_t>(ix + iy * d.resolution[0])];
        }
    return acc;
}

double smooth_abs(double y, double r) {
    const double ay = std::abs(y);
    if (ay >= r) return ay;
    return y * y / (2.0 * r) + 0.5 * r;
}

struct EvalBuilder {
    int dim = 1;
    std::function<double(const Point&)> operator()(const ConstantFn& c) const {
        const double v = c.value;
        return [v](const Point&) { return v; };
    }
    std::function<double(const Point&)> operator()(const AffineFn& a) const {
        const AffineFn aa = a;
        return [aa](const Point& x) { return aa.offset + aa.slope0 * x[0] + aa.slope1 * x[1]; };
    }
    std::function<double(const Point&)> operator()(const SineFn& s) const {
        const SineFn ss = s;
        return [ss](const Point& x) {
            double v = 1.0;
            if (ss.freq0 != 0.0) v *= std::sin(kTwoPi * ss.freq0 * x[0]);
            if (ss.freq1 != 0.0) v *= std::sin(kTwoPi * ss.freq1 * x[1]);
            return v;
        };
    }
    std::function<double(const Point&)> operator()(const BumpFn& b) const {
        const BumpFn bb = b;
        const bool planar = dim == 2;
        return [bb, planar](const Point& x) {
            const double y0 = (x[0] - bb.center0) / bb.width0;
            double r2 = y0 * y0;
            if (planar) {
                const double y1 = (x[1] - bb.center1) / bb.width1;
                r2 += y1 * y1;
            }
            if (r2 >= 1.0) return 0.0;
            return bb.amplitude * std::exp(1.0 - 1.0 / (1.0 - r2));
        };
    }
    std::function<double(const Point&)> operator()(const TentFn& t) const {
        const TentFn tt = t;
        return [tt](const Point& x) {
            const double y = (x[0] - tt.center) / tt.halfwidth;
            return tt.height * std::max(0.0, 1.0 - std::abs(y));
        };
    }
    std::function<double(const Point&)> operator()(const SmoothTentFn& t) const {
        const SmoothTentFn tt = t;
        return [tt](const Point& x) {
            const double y = (x[0] - tt.center) / tt.halfwidth;
            return tt.height * std::max(0.0, 1.0 - smooth_abs(y, tt.smooth_radius));
        };
    }
    std::function<double(const Point&)> operator()(const PowerTailFn& p) const {
        const PowerTailFn pp = p;
        return [pp](const Point& x) {
            if (x[0] < pp.cutoff) return 0.0;
            return std::pow(std::abs(x[0]), pp.exponent);
        };
    }
};

}  // namespace

double GridFunction::value_at(const Point& x) const {
    if (evaluator) return evaluator(x);
    return multilinear(domain, values, x);
}

GridFunction sample(const FunctionSpec& spec, const BoxDomain& domain) {
    domain.validate();
    GridFunction g;
    g.domain = domain;
    g.evaluator = std::visit(EvalBuilder{domain.dim}, spec);
    const std::int64_t n = domain.cell_count();
    g.values.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) g.values[static_cast<std::size_t>(i)] = g.evaluator(domain.center(i));
    for (double v : g.values)
        if (!std::isfinite(v)) throw std::invalid_argument("sample: non-finite value on the grid");
    return g;
}

GridFunction grid_function_from_values(const BoxDomain& domain, std::vector<double> values) {
    domain.validate();
    if (static_cast<std::int64_t>(values.size()) != domain.cell_count())
        throw std::invalid_argument("grid function: value count does not match the domain resolution");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("grid function: non-finite value");
    GridFunction g;
    g.domain = domain;
    g.values = std::move(values);
    return g;
}

GridFunction gradient_magnitude(const GridFunction& u) {
    const BoxDomain& d = u.domain;
    for (int a = 0; a < d.dim; ++a)
        if (d.resolution[a] < 3)
            throw std::invalid_argument("gradient_magnitude: needs resolution >= 3 per axis");
    GridFunction g;
    g.domain = d;
    g.values.assign(u.values.size(), 0.0);
    const std::int64_t nx = d.resolution[0];
    const std::int64_t ny = d.dim == 2 ? d.resolution[1] : 1;
    const auto at = [&](std::int64_t ix, std::int64_t iy) {
        return u.values[static_cast<std::size_t>(ix + iy * nx)];
    };
    // central difference inside, second-order one-sided at the edges; written
    // in difference form so constant shifts cancel exactly
    const auto diff = [](double u_prev, double u_mid, double u_next, double u_next2,
                         std::int64_t i, std::int64_t n, double h) {
        if (i == 0) return (4.0 * (u_next - u_mid) - (u_next2 - u_mid)) / (2.0 * h);
        if (i == n - 1) return (4.0 * (u_mid - u_prev) - (u_mid - u_next2)) / (2.0 * h);
        return (u_next - u_prev) / (2.0 * h);
    };
    for (std::int64_t iy = 0; iy < ny; ++iy) {
        for (std::int64_t ix = 0; ix < nx; ++ix) {
            // u_next2 doubles as u_{i+2} at the left edge and u_{i-2} at the right edge
            const std::int64_t x2 = (ix == nx - 1) ? nx - 3 : std::min<std::int64_t>(ix + 2, nx - 1);
            const double gx = diff(at(std::max<std::int64_t>(ix - 1, 0), iy), at(ix, iy),
                                   at(std::min<std::int64_t>(ix + 1, nx - 1), iy), at(x2, iy), ix, nx,
                                   d.cell_size(0));
            double gy = 0.0;
            if (d.dim == 2) {
                const std::int64_t y2 = (iy == ny - 1) ? ny - 3 : std::min<std::int64_t>(iy + 2, ny - 1);
                gy = diff(at(ix, std::max<std::int64_t>(iy - 1, 0)), at(ix, iy),
                          at(ix, std::min<std::int64_t>(iy + 1, ny - 1)), at(ix, y2), iy, ny,
                          d.cell_size(1));
            }
            g.values[static_cast<std::size_t>(ix + iy * nx)] = std::sqrt(gx * gx + gy * gy);
        }
    }
    return g;
}

double local_energy(const GridFunction& u, const ExponentField& p) {
    if (p.dimension != u.domain.dim) throw std::invalid_argument("local_energy: dimension mismatch");
    const GridFunction g = gradient_magnitude(u);
    const double vol = u.domain.cell_volume();
    double acc = 0.0;
    for (std::int64_t i = 0; i < u.domain.cell_count(); ++i) {
        const double gv = g.values[static_cast<std::size_t>(i)];
        acc += std::pow(gv, p(u.domain.center(i)));
    }
    return acc * vol;
}

double k_weighted_local_energy(const GridFunction& u, const ExponentField& p) {
    if (p.dimension != u.domain.dim) throw std::invalid_argument("local_energy: dimension mismatch");
    const GridFunction g = gradient_magnitude(u);
    const double vol = u.domain.cell_volume();
    double acc = 0.0;
    for (std::int64_t i = 0; i < u.domain.cell_count(); ++i) {
        const double px = p(u.domain.center(i));
        const double gv = g.values[static_cast<std::size_t>(i)];
        acc += k_const(u.domain.dim, px) * std::pow(gv, px);
    }
    return acc * vol;
}

namespace {

std::string fmt_axis(const std::array<double, 2>& v, int dim) {
    char buf[80];
    if (dim == 1) {
        std::snprintf(buf, sizeof buf, "%.17g", v[0]);
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", v[0], v[1]);
    return buf;
}

}  // namespace

void write_grid_csv(std::ostream& out, const GridFunction& u) {
    const BoxDomain& d = u.domain;
    out << "# box lower=" << fmt_axis(d.lower, d.dim) << " upper=" << fmt_axis(d.upper, d.dim)
        << " resolution=";
    if (d.dim == 1)
        out << d.resolution[0];
    else
        out << d.resolution[0] << ',' << d.resolution[1];
    out << '\n';
    char buf[48];
    for (double v : u.values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << '\n';
    }
}

void write_grid_csv_file(const std::string& path, const GridFunction& u) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_grid_csv(out, u);
}

GridFunction read_grid_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# box", 0) != 0)
        throw std::invalid_argument("grid csv: missing '# box' header");
    const auto field = [&header](const std::string& key) {
        const auto pos = header.find(key + "=");
        if (pos == std::string::npos)
            throw std::invalid_argument("grid csv: header missing " + key);
        const auto start = pos + key.size() + 1;
        const auto end = header.find(' ', start);
        return header.substr(start, end == std::string::npos ? std::string::npos : end - start);
    };
    const auto parse_pair = [](const std::string& s, double& a, double& b, bool& two) {
        const auto comma = s.find(',');
        two = comma != std::string::npos;
        a = std::stod(s.substr(0, comma));
        b = two ? std::stod(s.substr(comma + 1)) : 0.0;
    };
    BoxDomain d;
    bool two_lo = false, two_hi = false;
    parse_pair(field("lower"), d.lower[0], d.lower[1], two_lo);
    parse_pair(field("upper"), d.upper[0], d.upper[1], two_hi);
    const std::string res = field("resolution");
    const auto comma = res.find(',');
    d.resolution[0] = std::stoi(res.substr(0, comma));
    if (comma != std::string::npos) d.resolution[1] = std::stoi(res.substr(comma + 1));
    d.dim = (two_lo || two_hi || comma != std::string::npos) ? 2 : 1;
    d.validate();
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(d.cell_count()));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        vals.push_back(std::stod(line));
    }
    return grid_function_from_values(d, std::move(vals));
}

GridFunction read_grid_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open grid file: " + path);
    return read_grid_csv(in);
}

}  // namespace vexlab
