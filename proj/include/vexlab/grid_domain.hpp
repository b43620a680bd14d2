#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "vexlab/box.hpp"
#include "vexlab/exponent_field.hpp"

namespace vexlab {

/// Scalar function sampled at cell centers. When built from a closed form the
/// evaluator is retained for off-grid queries (polar evaluation, maximal
/// averages); otherwise off-grid queries fall back to multilinear
/// interpolation with constant extension outside the box.
struct GridFunction {
    BoxDomain domain;
    std::vector<double> values;
    std::function<double(const Point&)> evaluator;  // may be empty

    bool has_closed_form() const { return static_cast<bool>(evaluator); }
    double value_at(const Point& x) const;
};

// Test-function descriptors.
struct ConstantFn {
    double value;
};
struct AffineFn {
    double slope0 = 0.0;
    double slope1 = 0.0;
    double offset = 0.0;
};
struct SineFn {
    // u = prod over axes of sin(2 pi freq_a x_a); freq 0 contributes factor 1
    double freq0 = 1.0;
    double freq1 = 0.0;
};
struct BumpFn {
    double center0 = 0.5;
    double center1 = 0.5;
    double width0 = 0.4;
    double width1 = 0.4;
    double amplitude = 1.0;
};
struct TentFn {
    double center = 0.5;
    double halfwidth = 0.5;
    double height = 1.0;
};
// Tent with the apex kink replaced by a quadratic blend of half-width
// smooth_radius (in the tent's normalized coordinate), giving a C^1 function.
struct SmoothTentFn {
    double center = 0.5;
    double halfwidth = 0.5;
    double height = 1.0;
    double smooth_radius = 0.25;
};
// |x|^exponent on [cutoff, inf), 0 elsewhere (1D).
struct PowerTailFn {
    double exponent = -1.0 / 3.0;
    double cutoff = 2.0;
};

using FunctionSpec =
    std::variant<ConstantFn, AffineFn, SineFn, BumpFn, TentFn, SmoothTentFn, PowerTailFn>;

GridFunction sample(const FunctionSpec& spec, const BoxDomain& domain);

/// Builds a grid function from raw values (no closed form).
GridFunction grid_function_from_values(const BoxDomain& domain, std::vector<double> values);

/// |grad u| per cell: central differences inside, second-order one-sided at
/// the boundary. Requires resolution >= 3 per axis.
GridFunction gradient_magnitude(const GridFunction& u);

/// Midpoint rule for int |grad u|^{p(x)} dx.
double local_energy(const GridFunction& u, const ExponentField& p);

/// Midpoint rule for int K_{n,p(x)} |grad u|^{p(x)} dx (limit of the
/// level-exceedance functional).
double k_weighted_local_energy(const GridFunction& u, const ExponentField& p);

// Grid file format: `# box lower=<..> upper=<..> resolution=<..>` then one
// value per line, row-major.
void write_grid_csv(std::ostream& out, const GridFunction& u);
void write_grid_csv_file(const std::string& path, const GridFunction& u);
GridFunction read_grid_csv(std::istream& in);
GridFunction read_grid_csv_file(const std::string& path);

}  // namespace vexlab
