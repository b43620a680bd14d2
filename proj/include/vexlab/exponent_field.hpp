#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "vexlab/box.hpp"

namespace vexlab {

/// Variable exponent p(x) with its essential bounds. Immutable once built;
/// evaluation is pure and safe from any number of threads.
struct ExponentField {
    int dimension = 1;
    double p_minus = 1.0;
    double p_plus = 1.0;
    std::function<double(const Point&)> eval;

    double operator()(const Point& x) const { return eval(x); }
};

// Closed-form field descriptors. Ramp and step clamp to their plateaus
// outside the transition span, which also provides the extension of the
// field beyond the domain.
struct ConstantField {
    double value;
};

struct RampField {
    double from;
    double to;
    int axis = 0;
    double span_lo = 0.0;  // p == from at axis coord <= span_lo
    double span_hi = 1.0;  // p == to   at axis coord >= span_hi
};

struct StepField {
    double low;
    double high;
    double edge_lo;  // low plateau for x <= edge_lo
    double edge_hi;  // high plateau for x >= edge_hi, linear in between
    int axis = 0;
};

struct BumpField {
    double base;
    double amplitude;  // may be negative (a "well"); base+min(0,amplitude) must stay >= 1
    double center = 0.5;
    double width = 0.25;
    int axis = 0;
};

using FieldSpec = std::variant<ConstantField, RampField, StepField, BumpField>;

ExponentField field_from_expression(const FieldSpec& spec, int n);

/// Closed-form scalar profile with analytic range, without the p(x) >= 1
/// requirement (used for kernel coefficient maps like a(x)).
struct ScalarProfile {
    std::function<double(const Point&)> eval;
    double lo = 0.0;
    double hi = 0.0;
};

ScalarProfile scalar_profile(const FieldSpec& spec, int n);

/// Nearest-sample evaluator backed by per-cell values; bounds are the exact
/// min/max of the array. Values must all be >= 1.
ExponentField field_from_grid(const std::vector<double>& values, const BoxDomain& domain);

/// Samples the field at every cell center of the grid.
std::vector<double> sample_field(const ExponentField& field, const BoxDomain& domain);

/// Throws if any sampled value leaves [p_minus - tol, p_plus + tol] or drops below 1.
void validate_on_grid(const ExponentField& field, const BoxDomain& domain, double tol = 1e-12);

/// C-infinity bump shape: exp(1 - 1/(1-y^2)) for |y|<1, else 0. Peak value 1.
double mollifier_bump(double y);

}  // namespace vexlab
