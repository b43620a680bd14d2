#include "vexlab/kernel_family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vexlab/quadrature.hpp"
#include "vexlab/sphere_constants.hpp"

namespace vexlab {

namespace {

std::vector<Point> lattice_points(const BoxDomain& box, int want) {
    std::vector<Point> pts;
    if (box.dim == 1) {
        pts.reserve(want);
        for (int i = 0; i < want; ++i) {
            const double t = (i + 0.5) / want;
            pts.push_back({box.lower[0] + t * (box.upper[0] - box.lower[0]), 0.0});
        }
    } else {
        const int side = std::max(2, static_cast<int>(std::ceil(std::sqrt(double(want)))));
        pts.reserve(static_cast<std::size_t>(side) * side);
        for (int j = 0; j < side; ++j)
            for (int i = 0; i < side; ++i) {
                const double tx = (i + 0.5) / side;
                const double ty = (j + 0.5) / side;
                pts.push_back({box.lower[0] + tx * (box.upper[0] - box.lower[0]),
                               box.lower[1] + ty * (box.upper[1] - box.lower[1])});
            }
    }
    return pts;
}

std::vector<double> t_lattice(const LatticeOptions& o, const std::vector<double>& breakpoints) {
    std::vector<double> ts;
    ts.reserve(o.t_samples + 2 * breakpoints.size());
    const double l0 = std::log(o.t_min);
    const double l1 = std::log(o.t_max);
    for (int i = 0; i < o.t_samples; ++i)
        ts.push_back(std::exp(l0 + (l1 - l0) * i / (o.t_samples - 1.0)));
    for (double b : breakpoints) {
        ts.push_back(std::nextafter(b, 0.0));
        ts.push_back(std::nextafter(b, b * 2.0 + 1.0));
    }
    std::sort(ts.begin(), ts.end());
    return ts;
}

bool near_breakpoint(double t, const std::vector<double>& breakpoints) {
    for (double b : breakpoints)
        if (std::abs(t - b) <= 1e-9 * std::max(1.0, b)) return true;
    return false;
}

}  // namespace

KernelProfile make_model_kernel(std::function<double(const Point&)> a_of_x,
                                const ExponentField& p_field, int n,
                                const BoxDomain& validation_box, const LatticeOptions& lattice) {
    if (n != p_field.dimension)
        throw std::invalid_argument("model kernel: dimension mismatch with exponent field");
    // validate the admissibility band a(x) <= p/(gamma (p+1)) on the lattice
    // and collect the sup/inf of a and b
    double a_lo = 0.0, a_hi = 0.0, b_lo = 0.0, b_hi = 0.0;
    bool first = true;
    for (const Point& x : lattice_points(validation_box, lattice.x_samples)) {
        const double p = p_field(x);
        const double g = gamma(n, p);
        const double a = a_of_x(x);
        const double cap = p / (g * (p + 1.0));
        if (!(a >= 0.0) || a > cap * (1.0 + 1e-12))
            throw std::invalid_argument(
                "model kernel: a(x) outside the admissibility band [0, p/(gamma (p+1))] at x = (" +
                std::to_string(x[0]) + (n == 2 ? ", " + std::to_string(x[1]) : std::string()) + ")");
        const double b = p * (1.0 / g - a);
        if (first) {
            a_lo = a_hi = a;
            b_lo = b_hi = b;
            first = false;
        } else {
            a_lo = std::min(a_lo, a);
            a_hi = std::max(a_hi, a);
            b_lo = std::min(b_lo, b);
            b_hi = std::max(b_hi, b);
        }
    }

    KernelProfile k;
    k.dim = n;
    k.p_field = p_field;
    const ExponentField pf = p_field;
    const int nn = n;
    k.phi = [a_of_x, pf, nn](const Point& x, double t) {
        if (t <= 0.0) return 0.0;
        const double p = pf(x);
        const double a = a_of_x(x);
        if (t <= 1.0) return a * std::pow(t, p + 1.0);
        return p * (1.0 / gamma(nn, p) - a);
    };
    k.phi_slope = [a_of_x, pf](const Point& x, double t) {
        if (t <= 0.0) return 0.0;
        const double p = pf(x);
        if (t <= 1.0) return a_of_x(x) * (p + 1.0) * std::pow(t, p);
        return 0.0;
    };
    k.upper_a = a_hi;
    k.upper_b = b_hi;
    if (a_lo > 0.0) k.lower_alpha = a_lo;
    if (b_lo > 0.0) k.lower_beta = b_lo;
    k.monotone = true;  // a(x) <= b(x) on the admissibility band
    k.differentiable = true;
    k.t_breakpoints = {1.0};
    k.constant_tail_from = 1.0;
    k.family = "model";
    k.bind = [a_of_x, pf, nn](const Point& x) {
        KernelAt ka;
        ka.p = pf(x);
        ka.coeff = a_of_x(x);
        ka.power = ka.p + 1.0;
        ka.flat = ka.p * (1.0 / gamma(nn, ka.p) - ka.coeff);
        return ka;
    };
    return k;
}

KernelProfile make_model_kernel_admissible(const ExponentField& p_field, int n,
                                           const BoxDomain& validation_box, double fraction,
                                           const LatticeOptions& lattice) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("model kernel: admissible fraction must lie in [0,1]");
    const ExponentField pf = p_field;
    const int nn = n;
    auto a_of_x = [pf, nn, fraction](const Point& x) {
        const double p = pf(x);
        return fraction * p / (gamma(nn, p) * (p + 1.0));
    };
    KernelProfile k = make_model_kernel(a_of_x, p_field, n, validation_box, lattice);
    // a(p) = f p/(gamma (p+1)) and b(p) = (p/gamma)(1 - f/(p+1)) are both
    // increasing in p, so the field bounds give the kernel constants exactly
    // (the sampled lattice can only under-estimate the sup)
    const auto a_at = [nn, fraction](double p) { return fraction * p / (gamma(nn, p) * (p + 1.0)); };
    const auto b_at = [nn, &a_at](double p) { return p * (1.0 / gamma(nn, p) - a_at(p)); };
    k.upper_a = a_at(p_field.p_plus);
    k.upper_b = b_at(p_field.p_plus);
    if (a_at(p_field.p_minus) > 0.0) k.lower_alpha = a_at(p_field.p_minus);
    if (b_at(p_field.p_minus) > 0.0) k.lower_beta = b_at(p_field.p_minus);
    return k;
}

KernelProfile make_indicator_kernel(const ExponentField& p_field, int n) {
    if (n != p_field.dimension)
        throw std::invalid_argument("indicator kernel: dimension mismatch with exponent field");
    KernelProfile k;
    k.dim = n;
    k.p_field = p_field;
    const ExponentField pf = p_field;
    const int nn = n;
    k.phi = [pf, nn](const Point& x, double t) {
        if (t <= 1.0) return 0.0;
        const double p = pf(x);
        return p / gamma(nn, p);
    };
    // c(p) = p/gamma_{n,p} is increasing in p, so the field bounds give the
    // kernel bounds exactly
    k.upper_a = 0.0;
    k.upper_b = p_field.p_plus / gamma(n, p_field.p_plus);
    k.lower_beta = p_field.p_minus / gamma(n, p_field.p_minus);
    k.monotone = true;
    k.differentiable = false;
    k.t_breakpoints = {1.0};
    k.constant_tail_from = 1.0;
    k.family = "indicator";
    k.bind = [pf, nn](const Point& x) {
        KernelAt ka;
        ka.p = pf(x);
        ka.coeff = 0.0;
        ka.power = ka.p + 1.0;
        ka.flat = ka.p / gamma(nn, ka.p);
        return ka;
    };
    return k;
}

KernelProfile make_majorant_kernel(double a, double b, const ExponentField& p_field) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::invalid_argument("majorant kernel: constants must be nonnegative");
    KernelProfile k;
    k.dim = p_field.dimension;
    k.p_field = p_field;
    const ExponentField pf = p_field;
    k.phi = [a, b, pf](const Point& x, double t) {
        if (t <= 0.0) return 0.0;
        if (t < 1.0) return a * std::pow(t, pf(x) + 1.0);
        return b;
    };
    k.phi_slope = [a, pf](const Point& x, double t) {
        if (t <= 0.0) return 0.0;
        if (t < 1.0) return a * (pf(x) + 1.0) * std::pow(t, pf(x));
        return 0.0;
    };
    k.upper_a = a;
    k.upper_b = b;
    k.monotone = a <= b;
    k.differentiable = true;
    k.t_breakpoints = {1.0};
    k.constant_tail_from = 1.0;
    k.family = "majorant";
    k.bind = [a, b, pf](const Point& x) {
        KernelAt ka;
        ka.p = pf(x);
        ka.coeff = a;
        ka.power = ka.p + 1.0;
        ka.flat = b;
        ka.flat_at_one = true;
        return ka;
    };
    return k;
}

double check_normalization(const KernelProfile& kernel, const Point& x, double tol) {
    const double p = kernel.p_field(x);
    const auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double v = kernel.phi(x, t);
        if (v == 0.0) return 0.0;
        return v * std::pow(t, -(p + 1.0));
    };
    double integral = integrate_gk(integrand, 0.0, 1.0, tol, tol);
    if (!std::isfinite(integral))
        throw std::runtime_error("check_normalization: the [0,1] integral did not converge");
    if (kernel.constant_tail_from && *kernel.constant_tail_from <= 1.0) {
        // int_1^inf v t^{-(p+1)} dt = v / p
        const double v = kernel.phi(x, 2.0);
        integral += v / p;
    } else {
        const double p_minus = kernel.p_field.p_minus;
        double t0 = 1.0;
        for (int panel = 0; panel < 64; ++panel) {
            const double t1 = t0 * 2.0;
            integral += integrate_gk(integrand, t0, t1, tol, tol);
            t0 = t1;
            const double remaining = kernel.upper_b / (p_minus * std::pow(t0, p_minus));
            if (remaining < 1e-12) break;
            if (t0 > 1e12)
                throw std::runtime_error("check_normalization: tail integral appears to diverge");
        }
    }
    return gamma(kernel.dim, p) * integral - 1.0;
}

HypothesisReport check_hypotheses(const KernelProfile& kernel, const BoxDomain& box,
                                  const LatticeOptions& lattice) {
    HypothesisReport rep;
    if (kernel.monotone) rep.hp3 = true;
    if (kernel.lower_alpha) rep.phi1 = true;
    if (kernel.lower_beta) rep.phi2 = true;
    const auto xs = lattice_points(box, lattice.x_samples);
    const auto ts = t_lattice(lattice, kernel.t_breakpoints);
    const double slack = 1e-12;
    for (const Point& x : xs) {
        const double p = kernel.p_field(x);
        if (std::abs(kernel.phi(x, 0.0)) > 0.0) rep.phi_zero_at_zero = false;
        double prev = kernel.phi(x, 0.0);
        for (double t : ts) {
            const double v = kernel.phi(x, t);
            if (v < 0.0) rep.hp2 = false;
            if (t <= 1.0 && !near_breakpoint(t, kernel.t_breakpoints)) {
                const double cap = kernel.upper_a * std::pow(t, p + 1.0);
                if (v > cap + slack * (1.0 + cap)) {
                    rep.hp1 = false;
                    rep.worst_violation = std::max(rep.worst_violation, v - cap);
                }
                if (rep.phi1) {
                    const double floor = *kernel.lower_alpha * std::pow(t, kernel.p_field.p_plus + 1.0);
                    if (v < floor - slack * (1.0 + floor)) rep.phi1 = false;
                }
            }
            if (v > kernel.upper_b + slack * (1.0 + kernel.upper_b)) {
                rep.hp2 = false;
                rep.worst_violation = std::max(rep.worst_violation, v - kernel.upper_b);
            }
            if (rep.phi2 && t > 1.0 && !near_breakpoint(t, kernel.t_breakpoints)) {
                if (v < *kernel.lower_beta - slack * (1.0 + *kernel.lower_beta)) rep.phi2 = false;
            }
            if (rep.hp3 && v < prev - slack * (1.0 + std::abs(prev))) rep.hp3 = false;
            prev = v;
        }
    }
    return rep;
}

}  // namespace vexlab
