#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "vexlab/maximal_analysis.hpp"

using namespace vexlab;

TEST_CASE("maximal function of a nonnegative constant is the constant") {
    const BoxDomain dom = BoxDomain::interval(-2.0, 2.0, 64);
    const GridFunction u = sample(ConstantFn{1.5}, dom);
    const GridFunction mu = directional_maximal(u, {1.0, 0.0}, default_h_grid(dom));
    for (double v : mu.values) CHECK(v == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("maximal function dominates |u| cellwise") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 128);
    for (const FunctionSpec& spec :
         {FunctionSpec{SineFn{1.0, 0.0}}, FunctionSpec{BumpFn{0.4, 0.5, 0.3, 0.3, 2.0}}}) {
        const GridFunction u = sample(spec, dom);
        for (const Point omega : {Point{1.0, 0.0}, Point{-1.0, 0.0}}) {
            const GridFunction mu = directional_maximal(u, omega, default_h_grid(dom));
            for (std::size_t i = 0; i < u.values.size(); ++i)
                CHECK(mu.values[i] >= std::abs(u.values[i]) - 1e-9);
        }
    }
}

TEST_CASE("unit box indicator seen from x = -1") {
    // (1/h) int_0^h chi_[0,1](x+s) ds at x=-1 is (h-1)/h for h in [1,2], capped
    // by further growth loss; brute-force maximization over the same h grid is
    // the oracle.
    const BoxDomain dom = BoxDomain::interval(-2.0, 3.0, 640);
    GridFunction u = sample(ConstantFn{0.0}, dom);
    u.evaluator = [](const Point& x) { return (x[0] >= 0.0 && x[0] <= 1.0) ? 1.0 : 0.0; };
    for (std::int64_t i = 0; i < dom.cell_count(); ++i)
        u.values[static_cast<std::size_t>(i)] = u.evaluator(dom.center(i));
    const auto h_grid = default_h_grid(dom);
    double oracle = 0.0;
    for (double h : h_grid) {
        const double overlap = std::max(0.0, std::min(1.0, -1.0 + h) - 0.0);
        oracle = std::max(oracle, overlap / h);
    }
    CHECK(oracle == doctest::Approx(0.5).epsilon(2e-2));
    const GridFunction mu = directional_maximal(u, {1.0, 0.0}, h_grid);
    // locate the cell containing x = -1
    std::int64_t idx = 0;
    double best = 1e300;
    for (std::int64_t i = 0; i < dom.cell_count(); ++i) {
        const double d = std::abs(dom.center(i)[0] + 1.0);
        if (d < best) {
            best = d;
            idx = i;
        }
    }
    CHECK(mu.values[static_cast<std::size_t>(idx)] == doctest::Approx(oracle).epsilon(1e-2));
}

TEST_CASE("homogeneity and sublinearity on the shared h grid") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 96);
    const auto h_grid = default_h_grid(dom);
    const GridFunction u = sample(SineFn{1.0, 0.0}, dom);
    const GridFunction v = sample(BumpFn{0.6, 0.5, 0.25, 0.3, 1.5}, dom);
    const GridFunction mu = directional_maximal(u, {1.0, 0.0}, h_grid);
    const GridFunction mv = directional_maximal(v, {1.0, 0.0}, h_grid);

    SUBCASE("homogeneity") {
        GridFunction w = u;
        for (double& val : w.values) val *= -3.0;
        const GridFunction base = u;
        w.evaluator = [base](const Point& x) { return -3.0 * base.evaluator(x); };
        const GridFunction mw = directional_maximal(w, {1.0, 0.0}, h_grid);
        for (std::size_t i = 0; i < mw.values.size(); ++i)
            CHECK(mw.values[i] == doctest::Approx(3.0 * mu.values[i]).epsilon(1e-12));
    }
    SUBCASE("sublinearity") {
        GridFunction w = u;
        for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] += v.values[i];
        const GridFunction a = u, b = v;
        w.evaluator = [a, b](const Point& x) { return a.evaluator(x) + b.evaluator(x); };
        const GridFunction mw = directional_maximal(w, {1.0, 0.0}, h_grid);
        for (std::size_t i = 0; i < mw.values.size(); ++i)
            CHECK(mw.values[i] <= mu.values[i] + mv.values[i] + 1e-12);
    }
}

TEST_CASE("maximal averages are stable under h-grid refinement") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 128);
    const GridFunction u = sample(BumpFn{0.5, 0.5, 0.3, 0.3, 1.0}, dom);
    const GridFunction coarse = directional_maximal(u, {1.0, 0.0}, default_h_grid(dom, 256));
    const GridFunction fine = directional_maximal(u, {1.0, 0.0}, default_h_grid(dom, 512));
    double peak = 0.0;
    for (double v : fine.values) peak = std::max(peak, v);
    for (std::size_t i = 0; i < coarse.values.size(); ++i) {
        if (fine.values[i] < 1e-9 * peak) continue;  // zero tail right of the support
        CHECK(std::abs(fine.values[i] - coarse.values[i]) / fine.values[i] < 5e-3);
    }
    const ExponentField p2 = field_from_expression(ConstantField{2.0}, 1);
    CHECK(std::abs(modular(fine, p2) - modular(coarse, p2)) / modular(fine, p2) < 5e-3);
}

TEST_CASE("modular values") {
    SUBCASE("zero function") {
        const GridFunction u = sample(ConstantFn{0.0}, BoxDomain::interval(0.0, 1.0, 16));
        CHECK(modular(u, field_from_expression(ConstantField{2.0}, 1)) == 0.0);
    }
    SUBCASE("unit function on the unit box") {
        const GridFunction u = sample(ConstantFn{1.0}, BoxDomain::interval(0.0, 1.0, 64));
        for (double p : {1.0, 2.7, 4.0})
            CHECK(modular(u, field_from_expression(ConstantField{p}, 1)) ==
                  doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("power tail against the antiderivative") {
        // int_2^R x^{-4/3} dx = 3(2^{-1/3} - R^{-1/3}); R = 64 gives ~1.6311
        const double R = 64.0;
        const BoxDomain dom = BoxDomain::interval(-R, R, static_cast<int>(2 * R * 64));
        const GridFunction u = sample(PowerTailFn{-1.0 / 3.0, 2.0}, dom);
        const ExponentField p4 = field_from_expression(ConstantField{4.0}, 1);
        const double expected = 3.0 * (std::pow(2.0, -1.0 / 3.0) - std::pow(R, -1.0 / 3.0));
        CHECK(modular(u, p4) == doctest::Approx(expected).epsilon(1e-3));
        CHECK(expected == doctest::Approx(1.6311).epsilon(1e-3));
    }
}

TEST_CASE("counterexample report") {
    const ModularGrowthReport rep = counterexample_report({8.0, 16.0, 32.0}, 32);
    REQUIRE(rep.radii.size() == 3);
    SUBCASE("modular of u tracks the analytic truncation") {
        for (std::size_t k = 0; k < rep.radii.size(); ++k) {
            const double R = rep.radii[k];
            const double expected = 3.0 * (std::pow(2.0, -1.0 / 3.0) - std::pow(R, -1.0 / 3.0));
            CHECK(rep.modular_u[k] == doctest::Approx(expected).epsilon(2e-3));
        }
    }
    SUBCASE("maximal modular exceeds the plain modular and keeps growing") {
        for (std::size_t k = 0; k < rep.radii.size(); ++k)
            CHECK(rep.modular_mu[k] > rep.modular_u[k]);
        for (std::size_t k = 1; k < rep.radii.size(); ++k) {
            CHECK(rep.growth_ratio[k] == doctest::Approx(rep.modular_mu[k] / rep.modular_mu[k - 1]));
            CHECK(rep.growth_ratio[k] >= 1.15);
        }
    }
    SUBCASE("u-modular increments shrink while Mu-modular increments do not collapse") {
        const double inc_u_1 = rep.modular_u[1] - rep.modular_u[0];
        const double inc_u_2 = rep.modular_u[2] - rep.modular_u[1];
        CHECK(inc_u_2 < inc_u_1);
        CHECK(rep.modular_mu[2] - rep.modular_mu[1] > 0.5 * (rep.modular_mu[1] - rep.modular_mu[0]));
    }
}

TEST_CASE("input validation") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 16);
    const GridFunction u = sample(SineFn{1.0, 0.0}, dom);
    CHECK_THROWS_AS((void)directional_maximal(u, {0.7, 0.0}, default_h_grid(dom)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)directional_maximal(u, {1.0, 0.0}, {}), std::invalid_argument);
    const GridFunction u2 =
        sample(ConstantFn{1.0}, BoxDomain::rectangle({0, 0}, {1, 1}, 4, 4));
    CHECK_THROWS_AS((void)directional_maximal(u2, {1.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)counterexample_report({2.0, 8.0}, 16), std::invalid_argument);
    CHECK_THROWS_AS((void)counterexample_report({8.0, 8.0}, 16), std::invalid_argument);
}
