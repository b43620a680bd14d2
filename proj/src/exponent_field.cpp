#include "vexlab/exponent_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vexlab {

double mollifier_bump(double y) {
    const double y2 = y * y;
    if (y2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - y2));
}

namespace {

void check_ge_one(double v, const char* what) {
    if (!(v >= 1.0))
        throw std::invalid_argument(std::string("exponent field: ") + what +
                                    " produces values < 1 (p(x) >= 1 is required)");
}

struct Builder {
    int n;
    bool require_min = true;  // enforce p(x) >= 1

    void require_ge_one(double v, const char* what) const {
        if (require_min) check_ge_one(v, what);
    }

    ExponentField operator()(const ConstantField& c) const {
        require_ge_one(c.value, "constant");
        ExponentField f;
        f.dimension = n;
        f.p_minus = f.p_plus = c.value;
        const double v = c.value;
        f.eval = [v](const Point&) { return v; };
        return f;
    }

    ExponentField operator()(const RampField& r) const {
        require_ge_one(std::min(r.from, r.to), "ramp");
        if (!(r.span_hi > r.span_lo)) throw std::invalid_argument("exponent field: ramp span is empty");
        if (r.axis < 0 || r.axis >= n) throw std::invalid_argument("exponent field: ramp axis out of range");
        ExponentField f;
        f.dimension = n;
        f.p_minus = std::min(r.from, r.to);
        f.p_plus = std::max(r.from, r.to);
        const RampField rr = r;
        f.eval = [rr](const Point& x) {
            double s = (x[rr.axis] - rr.span_lo) / (rr.span_hi - rr.span_lo);
            s = std::clamp(s, 0.0, 1.0);
            return rr.from + s * (rr.to - rr.from);
        };
        return f;
    }

    ExponentField operator()(const StepField& s) const {
        require_ge_one(std::min(s.low, s.high), "step");
        if (!(s.edge_hi > s.edge_lo)) throw std::invalid_argument("exponent field: step edges must satisfy x0 < x1");
        if (s.axis < 0 || s.axis >= n) throw std::invalid_argument("exponent field: step axis out of range");
        ExponentField f;
        f.dimension = n;
        f.p_minus = std::min(s.low, s.high);
        f.p_plus = std::max(s.low, s.high);
        const StepField ss = s;
        f.eval = [ss](const Point& x) {
            const double c = x[ss.axis];
            if (c <= ss.edge_lo) return ss.low;
            if (c >= ss.edge_hi) return ss.high;
            const double t = (c - ss.edge_lo) / (ss.edge_hi - ss.edge_lo);
            return ss.low + t * (ss.high - ss.low);
        };
        return f;
    }

    ExponentField operator()(const BumpField& b) const {
        const double lo = b.base + std::min(0.0, b.amplitude);
        require_ge_one(lo, "bump");
        if (!(b.width > 0.0)) throw std::invalid_argument("exponent field: bump width must be positive");
        if (b.axis < 0 || b.axis >= n) throw std::invalid_argument("exponent field: bump axis out of range");
        ExponentField f;
        f.dimension = n;
        f.p_minus = std::min(b.base, b.base + b.amplitude);
        f.p_plus = std::max(b.base, b.base + b.amplitude);
        const BumpField bb = b;
        f.eval = [bb](const Point& x) {
            return bb.base + bb.amplitude * mollifier_bump((x[bb.axis] - bb.center) / bb.width);
        };
        return f;
    }
};

}  // namespace

ExponentField field_from_expression(const FieldSpec& spec, int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("exponent field: dimension must be 1 or 2");
    return std::visit(Builder{n, true}, spec);
}

ScalarProfile scalar_profile(const FieldSpec& spec, int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("scalar profile: dimension must be 1 or 2");
    ExponentField f = std::visit(Builder{n, false}, spec);
    return ScalarProfile{std::move(f.eval), f.p_minus, f.p_plus};
}

ExponentField field_from_grid(const std::vector<double>& values, const BoxDomain& domain) {
    domain.validate();
    if (static_cast<std::int64_t>(values.size()) != domain.cell_count())
        throw std::invalid_argument("exponent field: grid value count does not match the domain resolution");
    double lo = values.front(), hi = values.front();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 1.0))
            throw std::invalid_argument("exponent field: grid value at index " + std::to_string(i) +
                                        " is " + std::to_string(values[i]) + " (< 1)");
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
    ExponentField f;
    f.dimension = domain.dim;
    f.p_minus = lo;
    f.p_plus = hi;
    const BoxDomain dom = domain;
    const std::vector<double> vals = values;
    // nearest-sample lookup; clamping the index doubles as the boundary extension
    f.eval = [dom, vals](const Point& x) {
        std::int64_t idx[2] = {0, 0};
        for (int a = 0; a < dom.dim; ++a) {
            const double rel = (x[a] - dom.lower[a]) / dom.cell_size(a) - 0.5;
            const std::int64_t i = std::llround(rel);
            idx[a] = std::clamp<std::int64_t>(i, 0, dom.resolution[a] - 1);
        }
        return vals[static_cast<std::size_t>(idx[0] + idx[1] * dom.resolution[0])];
    };
    return f;
}

std::vector<double> sample_field(const ExponentField& field, const BoxDomain& domain) {
    if (field.dimension != domain.dim)
        throw std::invalid_argument("exponent field: dimension mismatch with the sampling grid");
    std::vector<double> out(static_cast<std::size_t>(domain.cell_count()));
    for (std::int64_t i = 0; i < domain.cell_count(); ++i)
        out[static_cast<std::size_t>(i)] = field(domain.center(i));
    return out;
}

void validate_on_grid(const ExponentField& field, const BoxDomain& domain, double tol) {
    const auto vals = sample_field(field, domain);
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double v = vals[i];
        if (!(v >= 1.0))
            throw std::invalid_argument("exponent field: sampled value < 1 at cell " + std::to_string(i));
        if (v < field.p_minus - tol || v > field.p_plus + tol)
            throw std::invalid_argument("exponent field: sampled value leaves [p_minus, p_plus] at cell " +
                                        std::to_string(i));
    }
}

}  // namespace vexlab
