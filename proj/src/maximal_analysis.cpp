#include "vexlab/maximal_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vexlab {

std::vector<double> default_h_grid(const BoxDomain& domain, int nodes) {
    if (nodes < 2) throw std::invalid_argument("default_h_grid: need at least 2 nodes");
    const double h0 = domain.max_cell_size();
    const double h1 = 8.0 * domain.diameter();
    std::vector<double> g(static_cast<std::size_t>(nodes));
    const double l0 = std::log(h0);
    const double l1 = std::log(h1);
    for (int k = 0; k < nodes; ++k)
        g[static_cast<std::size_t>(k)] = std::exp(l0 + (l1 - l0) * k / (nodes - 1.0));
    return g;
}

GridFunction directional_maximal(const GridFunction& u, const Point& omega,
                                 const std::vector<double>& h_grid) {
    if (u.domain.dim != 1)
        throw std::invalid_argument("directional_maximal: only 1D grids are supported");
    if (h_grid.empty()) throw std::invalid_argument("directional_maximal: empty h grid");
    const double norm = std::sqrt(omega[0] * omega[0] + omega[1] * omega[1]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("directional_maximal: omega must be a unit vector");
    const double sgn = omega[0] > 0.0 ? 1.0 : -1.0;

    const BoxDomain& d = u.domain;
    const double h_max = *std::max_element(h_grid.begin(), h_grid.end());
    const double ds = d.cell_size(0) / 4.0;

    // prefix integral A(t) of |u| along the ray span [t0, t1]
    const double t0 = sgn > 0 ? d.lower[0] : d.lower[0] - h_max - ds;
    const double t1 = sgn > 0 ? d.upper[0] + h_max + ds : d.upper[0];
    const std::int64_t m = static_cast<std::int64_t>(std::ceil((t1 - t0) / ds)) + 1;
    std::vector<double> prefix(static_cast<std::size_t>(m + 1), 0.0);
    double prev = std::abs(u.value_at({t0, 0.0}));
    for (std::int64_t k = 1; k <= m; ++k) {
        const double cur = std::abs(u.value_at({t0 + static_cast<double>(k) * ds, 0.0}));
        prefix[static_cast<std::size_t>(k)] =
            prefix[static_cast<std::size_t>(k - 1)] + 0.5 * (prev + cur) * ds;
        prev = cur;
    }
    const auto A = [&](double t) {
        const double f = std::clamp((t - t0) / ds, 0.0, static_cast<double>(m));
        const std::int64_t k = std::min<std::int64_t>(static_cast<std::int64_t>(f), m - 1);
        const double frac = f - static_cast<double>(k);
        return prefix[static_cast<std::size_t>(k)] * (1.0 - frac) +
               prefix[static_cast<std::size_t>(k + 1)] * frac;
    };

    GridFunction out;
    out.domain = d;
    out.values.assign(u.values.size(), 0.0);
    for (std::int64_t i = 0; i < d.cell_count(); ++i) {
        const double x = d.center(i)[0];
        // h -> 0 candidate (Lebesgue point value on the grid)
        double best = std::abs(u.values[static_cast<std::size_t>(i)]);
        const double Ax = A(x);
        for (double hh : h_grid) {
            const double avg = sgn > 0 ? (A(x + hh) - Ax) / hh : (Ax - A(x - hh)) / hh;
            best = std::max(best, avg);
        }
        out.values[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

double modular(const GridFunction& u, const ExponentField& p) {
    if (u.domain.dim != p.dimension) throw std::invalid_argument("modular: dimension mismatch");
    const double vol = u.domain.cell_volume();
    double acc = 0.0;
    for (std::int64_t i = 0; i < u.domain.cell_count(); ++i)
        acc += std::pow(std::abs(u.values[static_cast<std::size_t>(i)]), p(u.domain.center(i)));
    return acc * vol;
}

double modular_on_range(const GridFunction& u, const ExponentField& p, double x_lo, double x_hi) {
    if (u.domain.dim != p.dimension) throw std::invalid_argument("modular: dimension mismatch");
    const double vol = u.domain.cell_volume();
    double acc = 0.0;
    for (std::int64_t i = 0; i < u.domain.cell_count(); ++i) {
        const Point c = u.domain.center(i);
        if (c[0] < x_lo || c[0] > x_hi) continue;
        acc += std::pow(std::abs(u.values[static_cast<std::size_t>(i)]), p(c));
    }
    return acc * vol;
}

ModularGrowthReport counterexample_report(const std::vector<double>& R_values,
                                          int resolution_per_unit) {
    if (R_values.empty()) throw std::invalid_argument("counterexample_report: no radii");
    for (std::size_t k = 0; k < R_values.size(); ++k) {
        if (R_values[k] < 4.0)
            throw std::invalid_argument("counterexample_report: radii must be >= 4");
        if (k > 0 && R_values[k] <= R_values[k - 1])
            throw std::invalid_argument("counterexample_report: radii must be strictly increasing");
    }
    if (resolution_per_unit < 1)
        throw std::invalid_argument("counterexample_report: resolution_per_unit must be positive");

    ModularGrowthReport rep;
    rep.resolution_per_unit = resolution_per_unit;
    for (double R : R_values) {
        const int n = static_cast<int>(std::llround(2.0 * R * resolution_per_unit));
        const BoxDomain dom = BoxDomain::interval(-R, R, n);
        const GridFunction u = sample(PowerTailFn{-1.0 / 3.0, 2.0}, dom);
        const ExponentField p = field_from_expression(StepField{2.0, 4.0, -2.0, 2.0, 0}, 1);
        const GridFunction mu = directional_maximal(u, {1.0, 0.0}, default_h_grid(dom));
        rep.radii.push_back(R);
        rep.modular_u.push_back(modular(u, p));
        rep.modular_mu.push_back(modular(mu, p));
        const std::size_t k = rep.modular_mu.size();
        rep.growth_ratio.push_back(k > 1 ? rep.modular_mu[k - 1] / rep.modular_mu[k - 2] : 0.0);
    }
    return rep;
}

}  // namespace vexlab
