#pragma once

#include <vector>

#include "vexlab/exponent_field.hpp"
#include "vexlab/grid_domain.hpp"

namespace vexlab {

/// Log-spaced h grid from the cell size to 8x the domain diameter.
std::vector<double> default_h_grid(const BoxDomain& domain, int nodes = 256);

/// One-sided directional maximal function along omega (1D only):
///   M_w(u)(x) = sup_{h>0} (1/h) int_0^h |u(x + s w)| ds,
/// realized as the max over h_grid of trapezoid ray averages, together with
/// the h->0 candidate |u(x)| (the Lebesgue-point value), so M_w(u) >= |u|
/// holds exactly on the grid. Ray averages come from a prefix integral of
/// |u| sampled at cell_size/4, using the closed form beyond the box when u
/// has one.
GridFunction directional_maximal(const GridFunction& u, const Point& omega,
                                 const std::vector<double>& h_grid);

/// Midpoint sum of |u_i|^{p(x_i)} * cellvolume.
double modular(const GridFunction& u, const ExponentField& p);

/// Same restricted to cells with first coordinate in [x_lo, x_hi].
double modular_on_range(const GridFunction& u, const ExponentField& p, double x_lo, double x_hi);

struct ModularGrowthReport {
    std::vector<double> radii;        // truncation radii R_k, strictly increasing
    std::vector<double> modular_u;    // int_{-R}^{R} |u|^{p(x)}
    std::vector<double> modular_mu;   // int_{-R}^{R} |M_+(u)|^{p(x)}
    std::vector<double> growth_ratio; // modular_mu[k] / modular_mu[k-1], first entry 0
    int resolution_per_unit = 0;
};

/// Counterexample study: u(x) = |x|^{-1/3} chi_{[2,inf)}, p = 2 on (-inf,-2],
/// 4 on [2,inf), linear on [-2,2]. Modulars of u and of the rightward maximal
/// function on [-R, R] for each R.
ModularGrowthReport counterexample_report(const std::vector<double>& R_values,
                                          int resolution_per_unit);

}  // namespace vexlab
