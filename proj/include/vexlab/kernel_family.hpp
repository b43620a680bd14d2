#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vexlab/box.hpp"
#include "vexlab/exponent_field.hpp"

namespace vexlab {

/// Kernel profile evaluated at a fixed x: power branch coeff*t^{power} below
/// the flat branch, constant `flat` above it. Covers the model, indicator and
/// majorant families; binding once per x keeps exponent-field and gamma
/// lookups out of the pair loop.
struct KernelAt {
    double p = 1.0;       // p(x)
    double coeff = 0.0;   // power-branch coefficient
    double power = 2.0;   // power-branch exponent (p(x)+1)
    double flat = 0.0;    // value on the flat branch
    bool flat_at_one = false;  // flat branch starts at t=1 (majorant) instead of t>1

    double eval(double t) const {
        if (t <= 0.0) return 0.0;
        if (t > 1.0 || (flat_at_one && t >= 1.0)) return flat;
        return coeff == 0.0 ? 0.0 : coeff * std::pow(t, power);
    }
    // left derivative at the t=1 kink
    double slope(double t) const {
        if (t <= 0.0 || t > 1.0 || (flat_at_one && t >= 1.0)) return 0.0;
        return coeff == 0.0 ? 0.0 : coeff * power * std::pow(t, power - 1.0);
    }
};

/// Kernel family phi(x,t) together with its growth constants and capability
/// flags. Immutable after construction; evaluators are pure.
///
/// Hypothesis tags used in reports and refusal messages:
///   (Hp1)   phi(x,t) <= a t^{p(x)+1} on [0,1]
///   (Hp2)   phi(x,t) <= b everywhere
///   (Hp3)   phi(x,.) non-decreasing
///   (Hp4)   gamma_{n,p(x)} int_0^inf phi(x,t) t^{-(p(x)+1)} dt = 1
///   (phi1)  alpha t^{p+ +1} <= phi(x,t) on (0,1]   (lower bound, if set)
///   (phi2)  beta <= phi(x,t) for t > 1             (lower bound, if set)
struct KernelProfile {
    int dim = 1;
    ExponentField p_field;
    std::function<double(const Point&, double)> phi;
    std::function<double(const Point&, double)> phi_slope;  // left derivative at kinks
    double upper_a = 0.0;
    double upper_b = 0.0;
    std::optional<double> lower_alpha;
    std::optional<double> lower_beta;
    bool monotone = false;
    bool differentiable = false;
    std::vector<double> t_breakpoints;            // jump/kink levels of phi(x,.)
    std::optional<double> constant_tail_from;     // phi(x,t) constant for t >= this
    std::string family;
    std::function<KernelAt(const Point&)> bind;   // fast row-wise evaluator (always set for built-ins)

    double operator()(const Point& x, double t) const { return phi(x, t); }
    double exponent(const Point& x) const { return p_field(x); }
};

/// phi_delta(x,u) = delta^{p(x)} phi(x, u/delta).
struct ScaledKernel {
    const KernelProfile* base;
    double delta;

    double operator()(const Point& x, double u) const {
        const double p = base->p_field(x);
        return std::pow(delta, p) * base->phi(x, u / delta);
    }
};

struct LatticeOptions {
    int x_samples = 64;
    int t_samples = 256;
    double t_min = 1e-4;
    double t_max = 1e3;
};

/// Model kernel: phi(x,t) = a(x) t^{p(x)+1} on [0,1], b(x) on (1,inf) with
/// b(x) = p(x)(1/gamma_{n,p(x)} - a(x)). Requires the admissibility band
/// 0 <= a(x) <= p(x)/(gamma_{n,p(x)}(p(x)+1)) at every lattice sample, which
/// guarantees a(x) <= b(x) and the (Hp4) unit normalization.
KernelProfile make_model_kernel(std::function<double(const Point&)> a_of_x,
                                const ExponentField& p_field, int n,
                                const BoxDomain& validation_box,
                                const LatticeOptions& lattice = {});

/// Convenience: model kernel with the largest admissible coefficient
/// a(x) = p(x)/(gamma_{n,p(x)}(p(x)+1)) scaled by `fraction` in [0,1].
KernelProfile make_model_kernel_admissible(const ExponentField& p_field, int n,
                                           const BoxDomain& validation_box, double fraction = 1.0,
                                           const LatticeOptions& lattice = {});

/// Indicator kernel: phi(x,t) = c(x) chi_{(1,inf)}(t) with c(x) =
/// p(x)/gamma_{n,p(x)}; satisfies (Hp4) exactly, fails (phi1).
KernelProfile make_indicator_kernel(const ExponentField& p_field, int n);

/// Majorant: a t^{p(x)+1} on [0,1), b on [1,inf). Monotone when a <= b.
KernelProfile make_majorant_kernel(double a, double b, const ExponentField& p_field);

/// gamma_{n,p(x)} * int_0^inf phi(x,t) t^{-(p(x)+1)} dt  -  1, by adaptive
/// quadrature on [0,1] plus an analytic tail for eventually constant kernels
/// (log-spaced panels otherwise, truncated once the remaining mass bound
/// drops below 1e-12).
double check_normalization(const KernelProfile& kernel, const Point& x, double tol = 1e-12);

struct HypothesisReport {
    bool phi_zero_at_zero = true;
    bool hp1 = true;   // phi <= a t^{p(x)+1} on [0,1]
    bool hp2 = true;   // phi <= b
    std::optional<bool> hp3;    // non-decreasing (checked when monotone is declared)
    std::optional<bool> phi1;   // alpha t^{p+ +1} <= phi on (0,1]
    std::optional<bool> phi2;   // beta <= phi for t > 1
    double worst_violation = 0.0;

    bool all_ok() const {
        return phi_zero_at_zero && hp1 && hp2 && hp3.value_or(true) && phi1.value_or(true) &&
               phi2.value_or(true);
    }
};

/// Samples the declared bounds on an (x,t) lattice (t log-spaced plus the
/// breakpoints; nodes within 1e-9 of a breakpoint are skipped so jump points
/// do not generate spurious violations).
HypothesisReport check_hypotheses(const KernelProfile& kernel, const BoxDomain& box,
                                  const LatticeOptions& lattice = {});

}  // namespace vexlab
