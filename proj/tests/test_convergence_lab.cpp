#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vexlab/convergence_lab.hpp"

using namespace vexlab;

namespace {

const BoxDomain unit_box = BoxDomain::interval(0.0, 1.0, 64);
constexpr double kPi = 3.14159265358979323846264338327950288;

std::vector<double> geometric(double start, double ratio, int count) {
    std::vector<double> s;
    double d = start;
    for (int k = 0; k < count; ++k, d *= ratio) s.push_back(d);
    return s;
}

}  // namespace

TEST_CASE("constant u sweeps flat zero") {
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const GridFunction u = sample(ConstantFn{4.0}, BoxDomain::interval(0.0, 1.0, 64));
    const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    const ConvergenceReport rep = delta_sweep(u, p, k, geometric(0.1, 0.5, 4));
    for (double lam : rep.lambdas) CHECK(lam == 0.0);
    for (double err : rep.rel_errors) CHECK(err == 0.0);
    CHECK(rep.reference_energy == 0.0);
    REQUIRE(rep.extrapolated_limit.has_value());
    CHECK(*rep.extrapolated_limit == 0.0);
}

TEST_CASE("sine sweep converges to the local energy") {
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 256);
    const GridFunction u = sample(SineFn{1.0, 0.0}, dom);
    const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    const ConvergenceReport rep = delta_sweep(u, p, k, geometric(0.1, 0.5, 4));

    CHECK(rep.reference_energy == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-3));
    REQUIRE(rep.extrapolated_limit.has_value());
    CHECK(std::abs(*rep.extrapolated_limit - rep.reference_energy) / rep.reference_energy < 0.02);

    // resolved flags: delta >= 4/256 = 0.015625 holds for 0.1, 0.05, 0.025 only
    CHECK(rep.resolved == std::vector<bool>{true, true, true, false});
    REQUIRE(rep.fitted_rate.has_value());
    CHECK(*rep.fitted_rate == doctest::Approx(1.0).epsilon(0.5));

    SUBCASE("monotone improvement on resolved entries") {
        for (std::size_t k2 = 1; k2 < rep.rel_errors.size(); ++k2) {
            if (!rep.resolved[k2]) continue;
            CHECK(std::abs(rep.rel_errors[k2]) <= std::abs(rep.rel_errors[k2 - 1]) + 1e-3);
        }
    }
    SUBCASE("extrapolated limit sits near the last resolved values") {
        // inside the hull of the last three resolved lambdas, or within 1% of it
        double lo = 1e300, hi = -1e300;
        int counted = 0;
        for (std::size_t k2 = rep.lambdas.size(); k2-- > 0 && counted < 3;) {
            if (!rep.resolved[k2]) continue;
            lo = std::min(lo, rep.lambdas[k2]);
            hi = std::max(hi, rep.lambdas[k2]);
            ++counted;
        }
        const double L = *rep.extrapolated_limit;
        const double dist_to_hull = L < lo ? lo - L : (L > hi ? L - hi : 0.0);
        CHECK(dist_to_hull <= 0.01 * std::max(std::abs(lo), std::abs(hi)));
    }
}

TEST_CASE("schedule validation") {
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 32));
    const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    CHECK_THROWS_AS((void)delta_sweep(u, p, k, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)delta_sweep(u, p, k, {0.1, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS((void)delta_sweep(u, p, k, {0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS((void)delta_sweep(u, p, k, {0.1, -0.05}), std::invalid_argument);
}

TEST_CASE("liminf check") {
    SUBCASE("constant u passes trivially") {
        const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
        const GridFunction u = sample(ConstantFn{1.0}, BoxDomain::interval(0.0, 1.0, 256));
        const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
        const LiminfResult res = liminf_check(u, p, k, geometric(0.1, 0.5, 3), 0.05);
        CHECK(res.passed);
    }
    SUBCASE("C1 bump with a p- = 1 ramp and the model kernel") {
        const ExponentField p = field_from_expression(RampField{1.0, 2.0}, 1);
        const GridFunction u = sample(BumpFn{0.5, 0.5, 0.4, 0.4, 1.0}, BoxDomain::interval(0, 1, 256));
        const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
        const LiminfResult res = liminf_check(u, p, k, geometric(0.04, 0.5, 3), 0.05);
        CHECK(res.passed);
        CHECK(res.worst_margin > 0.0);
    }
    SUBCASE("indicator kernel is refused for the sufficient-condition variant") {
        const ExponentField p = field_from_expression(RampField{1.5, 2.5}, 1);
        const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 64));
        const KernelProfile k = make_indicator_kernel(p, 1);
        try {
            (void)liminf_check(u, p, k, geometric(0.05, 0.5, 3), 0.05,
                               LiminfVariant::sufficient_condition);
            FAIL("expected a refusal");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("phi1") != std::string::npos);
        }
    }
    SUBCASE("sufficient-condition variant needs p- > 1") {
        const ExponentField p = field_from_expression(RampField{1.0, 2.0}, 1);
        const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 64));
        const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
        CHECK_THROWS_AS((void)liminf_check(u, p, k, geometric(0.05, 0.5, 3), 0.05,
                                           LiminfVariant::sufficient_condition),
                        std::invalid_argument);
    }
}

TEST_CASE("bound check") {
    SUBCASE("p- = 1 is refused") {
        const ExponentField p = field_from_expression(RampField{1.0, 2.0}, 1);
        const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 64));
        const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
        CHECK_THROWS_AS((void)bound_check(u, p, k, geometric(0.1, 0.5, 3)), std::invalid_argument);
    }
    SUBCASE("constant u is vacuously bounded") {
        const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
        const GridFunction u = sample(ConstantFn{2.0}, BoxDomain::interval(0.0, 1.0, 64));
        const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
        const BoundCheckResult res = bound_check(u, p, k, geometric(0.1, 0.5, 3));
        CHECK(res.vacuous);
        CHECK(res.passed);
    }
    SUBCASE("sine ratios stay within 1.05x the coarsest") {
        const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
        const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 256));
        const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
        const BoundCheckResult res = bound_check(u, p, k, geometric(0.1, 0.5, 4));
        CHECK(res.passed);
        CHECK(res.c_star > 0.0);
        CHECK(res.max_ratio <= 1.05 * res.c_star);
    }
}

TEST_CASE("identical configs produce identical CSV bytes") {
    const ExponentField p = field_from_expression(RampField{1.5, 2.5}, 1);
    const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 128));
    const KernelProfile k = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    SweepOptions o1, o2;
    o1.pair.threads = 1;
    o2.pair.threads = 3;
    const ConvergenceReport r1 = delta_sweep(u, p, k, geometric(0.1, 0.5, 3), o1);
    const ConvergenceReport r2 = delta_sweep(u, p, k, geometric(0.1, 0.5, 3), o2);
    std::ostringstream s1, s2;
    write_sweep_csv(s1, r1, "cfg");
    write_sweep_csv(s2, r2, "cfg");
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().rfind("# cfg", 0) == 0);
    CHECK(s1.str().find("\nrate=") != std::string::npos);
    CHECK(s1.str().find("\nlimit=") != std::string::npos);
}

TEST_CASE("indicator sweep references the K-weighted local energy") {
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const GridFunction u = sample(SineFn{1.0, 0.0}, BoxDomain::interval(0.0, 1.0, 256));
    SweepOptions opts;
    opts.method = SweepMethod::indicator;
    const KernelProfile unused = make_indicator_kernel(p, 1);
    const ConvergenceReport rep = delta_sweep(u, p, unused, geometric(0.1, 0.5, 3), opts);
    CHECK(rep.reference_kind == "k-weighted-local-energy");
    // K_{1,2} = 1, so the reference matches the plain local energy
    CHECK(rep.reference_energy == doctest::Approx(local_energy(u, p)).epsilon(1e-12));
}
