#include "vexlab/config.hpp"

#include <fstream>
#include <stdexcept>

namespace vexlab {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file does not exist: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
    }
    return j;
}

namespace {

double num(const Json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("config: missing required key \"") + key + "\"");
    return j.at(key).get<double>();
}

double num_or(const Json& j, const char* key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

std::string kind_of(const Json& j) {
    if (!j.contains("kind")) throw std::invalid_argument("config: descriptor missing \"kind\"");
    return j.at("kind").get<std::string>();
}

}  // namespace

BoxDomain parse_box(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: domain must be an object");
    const Json& lo = j.at("lower");
    const Json& hi = j.at("upper");
    const Json& res = j.at("resolution");
    BoxDomain d;
    if (lo.is_array()) {
        d.dim = 2;
        d.lower = {lo.at(0).get<double>(), lo.at(1).get<double>()};
        d.upper = {hi.at(0).get<double>(), hi.at(1).get<double>()};
        d.resolution = {res.at(0).get<int>(), res.at(1).get<int>()};
    } else {
        d.dim = 1;
        d.lower = {lo.get<double>(), 0.0};
        d.upper = {hi.get<double>(), 0.0};
        d.resolution = {res.get<int>(), 1};
    }
    d.validate();
    return d;
}

ExponentField parse_exponent_field(const Json& j, int n) {
    const std::string kind = kind_of(j);
    if (kind == "constant") return field_from_expression(ConstantField{num(j, "value")}, n);
    if (kind == "ramp") {
        RampField r;
        r.from = num(j, "from");
        r.to = num(j, "to");
        r.axis = static_cast<int>(num_or(j, "axis", 0));
        r.span_lo = num_or(j, "span_lo", 0.0);
        r.span_hi = num_or(j, "span_hi", 1.0);
        return field_from_expression(r, n);
    }
    if (kind == "step") {
        StepField s;
        s.low = num(j, "low");
        s.high = num(j, "high");
        const Json& e = j.at("edges");
        s.edge_lo = e.at(0).get<double>();
        s.edge_hi = e.at(1).get<double>();
        s.axis = static_cast<int>(num_or(j, "axis", 0));
        return field_from_expression(s, n);
    }
    if (kind == "bump") {
        BumpField b;
        b.base = num(j, "base");
        b.amplitude = num(j, "amplitude");
        b.center = num_or(j, "center", 0.5);
        b.width = num_or(j, "width", 0.25);
        b.axis = static_cast<int>(num_or(j, "axis", 0));
        return field_from_expression(b, n);
    }
    if (kind == "grid") {
        const GridFunction g = read_grid_csv_file(j.at("path").get<std::string>());
        return field_from_grid(g.values, g.domain);
    }
    throw std::invalid_argument("config: unknown exponent field kind \"" + kind + "\"");
}

namespace {

FieldSpec parse_profile_spec(const Json& j) {
    const std::string kind = kind_of(j);
    if (kind == "constant") return ConstantField{num(j, "value")};
    if (kind == "ramp") {
        RampField r;
        r.from = num(j, "from");
        r.to = num(j, "to");
        r.axis = static_cast<int>(num_or(j, "axis", 0));
        r.span_lo = num_or(j, "span_lo", 0.0);
        r.span_hi = num_or(j, "span_hi", 1.0);
        return r;
    }
    if (kind == "step") {
        StepField s;
        s.low = num(j, "low");
        s.high = num(j, "high");
        const Json& e = j.at("edges");
        s.edge_lo = e.at(0).get<double>();
        s.edge_hi = e.at(1).get<double>();
        s.axis = static_cast<int>(num_or(j, "axis", 0));
        return s;
    }
    if (kind == "bump") {
        BumpField b;
        b.base = num(j, "base");
        b.amplitude = num(j, "amplitude");
        b.center = num_or(j, "center", 0.5);
        b.width = num_or(j, "width", 0.25);
        b.axis = static_cast<int>(num_or(j, "axis", 0));
        return b;
    }
    throw std::invalid_argument("config: unknown profile kind \"" + kind + "\"");
}

}  // namespace

KernelProfile parse_kernel(const Json& j, const ExponentField& p, int n, const BoxDomain& box) {
    const std::string kind = kind_of(j);
    if (kind == "model") {
        if (!j.contains("a")) return make_model_kernel_admissible(p, n, box, 1.0);
        const Json& a = j.at("a");
        if (a.is_number()) {
            const double av = a.get<double>();
            return make_model_kernel([av](const Point&) { return av; }, p, n, box);
        }
        const ScalarProfile prof = scalar_profile(parse_profile_spec(a), n);
        return make_model_kernel(prof.eval, p, n, box);
    }
    if (kind == "indicator") return make_indicator_kernel(p, n);
    if (kind == "majorant") return make_majorant_kernel(num(j, "a"), num(j, "b"), p);
    throw std::invalid_argument("config: unknown kernel kind \"" + kind + "\"");
}

GridFunction parse_grid_function(const Json& j, const BoxDomain& box) {
    const std::string kind = kind_of(j);
    if (kind == "constant") return sample(ConstantFn{num(j, "value")}, box);
    if (kind == "affine") {
        AffineFn a;
        a.offset = num_or(j, "offset", 0.0);
        const Json& s = j.at("slope");
        if (s.is_array()) {
            a.slope0 = s.at(0).get<double>();
            a.slope1 = s.at(1).get<double>();
        } else {
            a.slope0 = s.get<double>();
        }
        return sample(a, box);
    }
    if (kind == "sine") {
        SineFn s;
        const Json& f = j.contains("freq") ? j.at("freq") : Json(1.0);
        if (f.is_array()) {
            s.freq0 = f.at(0).get<double>();
            s.freq1 = f.at(1).get<double>();
        } else {
            s.freq0 = f.get<double>();
            s.freq1 = 0.0;
        }
        return sample(s, box);
    }
    if (kind == "bump") {
        BumpFn b;
        b.center0 = num_or(j, "center", 0.5);
        b.center1 = num_or(j, "center1", 0.5);
        b.width0 = num_or(j, "width", 0.4);
        b.width1 = num_or(j, "width1", 0.4);
        b.amplitude = num_or(j, "amplitude", 1.0);
        return sample(b, box);
    }
    if (kind == "tent") {
        TentFn t;
        t.center = num_or(j, "center", 0.5);
        t.halfwidth = num_or(j, "halfwidth", 0.5);
        t.height = num_or(j, "height", 1.0);
        return sample(t, box);
    }
    if (kind == "smooth_tent") {
        SmoothTentFn t;
        t.center = num_or(j, "center", 0.5);
        t.halfwidth = num_or(j, "halfwidth", 0.5);
        t.height = num_or(j, "height", 1.0);
        t.smooth_radius = num_or(j, "smooth_radius", 0.25);
        return sample(t, box);
    }
    if (kind == "power_tail") {
        PowerTailFn t;
        t.exponent = num_or(j, "exponent", -1.0 / 3.0);
        t.cutoff = num_or(j, "cutoff", 2.0);
        return sample(t, box);
    }
    if (kind == "grid") {
        GridFunction g = read_grid_csv_file(j.at("path").get<std::string>());
        if (!g.domain.same_grid(box))
            throw std::invalid_argument("config: grid file does not match the configured domain");
        return g;
    }
    throw std::invalid_argument("config: unknown test function kind \"" + kind + "\"");
}

std::string config_echo(const Json& j) { return j.dump(); }

}  // namespace vexlab
