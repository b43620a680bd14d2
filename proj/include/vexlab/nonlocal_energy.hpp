#pragma once

#include <cstdint>
#include <utility>

#include "vexlab/exponent_field.hpp"
#include "vexlab/grid_domain.hpp"
#include "vexlab/kernel_family.hpp"

namespace vexlab {

enum class EnergyMethod { direct, polar };

struct EnergyResult {
    double value = 0.0;
    EnergyMethod method = EnergyMethod::direct;
    double tail_bound = 0.0;  // polar only; uncertainty, never added to value
    std::uint64_t pairs_evaluated = 0;
};

/// Controls for the double pair sum. With near_field off this is the plain
/// midpoint sum over ordered cell pairs (i != j). With near_field on, pairs
/// closer than ~near_field_delta_factor*delta (at least near_field_min_cells
/// cells, diagonal included) are integrated by subcell Gauss quadrature with
/// panel splits at the kernel's breakpoint radii; the plain midpoint rule
/// loses the concentrated near-diagonal mass at rate |grad u| h / delta,
/// which would dominate every delta-sweep.
struct PairSumOptions {
    int threads = 0;  // 0 = available parallelism
    bool near_field = true;
    double near_field_delta_factor = 2.0;
    int near_field_min_cells = 3;
    int gauss_x = 8;    // x-cell integration order (1D); per-axis order 4 in 2D
    int gauss_r = 12;   // per-panel order for radial integrals (1D)
    double r_cut = 1e-8;  // inner cutoff, fraction of the cell size
};

/// Lambda_delta(u) over Omega x Omega: the first argument carries p(x),
/// phi(x,.) and delta^{p(x)}; no symmetrization.
EnergyResult lambda_direct(const GridFunction& u, const ExponentField& p,
                           const KernelProfile& kernel, double delta,
                           const PairSumOptions& opts = {});

struct PolarOptions {
    double h_min = 1e-3;
    double h_max = 1e3;
    int h_nodes = 400;
    int angular_nodes = 16;  // n=2 only; n=1 uses the two directions
    int threads = 0;
};

/// The proof's polar form on R^n for compactly supported u:
///   int dx int_{S^{n-1}} int_0^inf phi(x, |u(x+delta h w)-u(x)|/delta) / h^{p(x)+1} dh dw dx
/// evaluated on the grid cells with a log-spaced h-grid. The h > h_max
/// remainder is reported as tail_bound = b |S^{n-1}| |Omega| / (p^- h_max^{p^-}).
/// Requires an off-grid (closed-form) evaluator on u.
EnergyResult lambda_polar(const GridFunction& u, const ExponentField& p,
                          const KernelProfile& kernel, double delta,
                          const PolarOptions& opts = {});

/// Level-exceedance functional: pair sum of
/// delta^{p(x_i)} |x_i-y_j|^{-(n+p(x_i))} vol^2 over pairs with |u_i-u_j| > delta.
double indicator_functional(const GridFunction& u, const ExponentField& p, double delta,
                            const PairSumOptions& opts = {});

/// eps-functional: pair sum of eps |u_i-u_j|^{p(x_i)+eps} |x_i-y_j|^{-(n+p(x_i))} vol^2.
/// Requires 0 < eps < 1/2.
double epsilon_functional(const GridFunction& u, const ExponentField& p, double eps,
                          int threads = 0);

/// (||grad u||_{p+}^{p+}, ||grad u||_{p-}^{p-}) by midpoint rule.
std::pair<double, double> upper_bound_rhs(const GridFunction& u, const ExponentField& p);

/// Single ordered-pair midpoint summand of lambda_direct (testing hook for
/// summand-wise monotonicity/domination checks).
double pair_summand(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
                    double delta, std::int64_t i, std::int64_t j);

}  // namespace vexlab
