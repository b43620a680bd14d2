#include <doctest.h>

#include <cmath>

#include "vexlab/denoiser.hpp"
#include "vexlab/rng.hpp"

using namespace vexlab;

namespace {

const BoxDomain unit_box = BoxDomain::interval(0.0, 1.0, 64);

GridFunction random_grid(const BoxDomain& dom, Rng& rng, double lo = 0.0, double hi = 1.0) {
    std::vector<double> vals(static_cast<std::size_t>(dom.cell_count()));
    for (double& v : vals) v = rng.uniform(lo, hi);
    return grid_function_from_values(dom, std::move(vals));
}

}  // namespace

TEST_CASE("analytic gradient matches central differences on random instances") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 16);
    const ExponentField p = field_from_expression(BumpField{2.0, -1.0, 0.5, 0.2, 0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    DenoiseConfig cfg;
    cfg.lambda = 5.0;
    cfg.delta = 0.35;
    const double fd_step = 1e-6;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 10u}) {
        Rng rng(seed);
        GridFunction u = random_grid(dom, rng);
        const GridFunction f = random_grid(dom, rng);
        const GridFunction g = energy_gradient(u, f, p, kernel, cfg);
        for (std::int64_t k = 0; k < dom.cell_count(); ++k) {
            GridFunction up = u, dn = u;
            up.values[static_cast<std::size_t>(k)] += fd_step;
            dn.values[static_cast<std::size_t>(k)] -= fd_step;
            const double fd = (total_energy(up, f, p, kernel, cfg) -
                               total_energy(dn, f, p, kernel, cfg)) /
                              (2.0 * fd_step);
            const double denom = std::max(std::abs(fd), 1e-8);
            CHECK(std::abs(g.values[static_cast<std::size_t>(k)] - fd) / denom < 1e-5);
        }
    }
}

TEST_CASE("energy pieces") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 24);
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    DenoiseConfig cfg;
    cfg.delta = 0.2;
    SUBCASE("u = f constant: both terms vanish") {
        const GridFunction f = sample(ConstantFn{2.0}, dom);
        cfg.lambda = 3.0;
        CHECK(total_energy(f, f, p, kernel, cfg) == 0.0);
    }
    SUBCASE("u = f nonconstant: fidelity is zero") {
        const GridFunction f = sample(SineFn{1.0, 0.0}, dom);
        cfg.lambda = 3.0;
        PairSumOptions plain;
        plain.near_field = false;
        CHECK(total_energy(f, f, p, kernel, cfg) ==
              doctest::Approx(lambda_direct(f, p, kernel, cfg.delta, plain).value).epsilon(1e-14));
    }
    SUBCASE("lambda = 0 leaves only the nonlocal term") {
        const GridFunction f = sample(SineFn{1.0, 0.0}, dom);
        GridFunction u = sample(BumpFn{0.5, 0.5, 0.3, 0.3, 1.0}, dom);
        cfg.lambda = 0.0;
        PairSumOptions plain;
        plain.near_field = false;
        CHECK(total_energy(u, f, p, kernel, cfg) ==
              doctest::Approx(lambda_direct(u, p, kernel, cfg.delta, plain).value).epsilon(1e-14));
    }
}

TEST_CASE("indicator kernels are refused by the gradient") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 8);
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const KernelProfile kernel = make_indicator_kernel(p, 1);
    const GridFunction f = sample(SineFn{1.0, 0.0}, dom);
    DenoiseConfig cfg;
    CHECK_THROWS_AS((void)energy_gradient(f, f, p, kernel, cfg), std::invalid_argument);
}

TEST_CASE("all pair differences beyond delta: gradient reduces to the fidelity term") {
    // steps of height 1 with delta = 0.4: |u_i - u_j| >= 1 > delta for i != j,
    // so the kernel sits on its flat branch and only lambda(u-f) vol remains
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 8);
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    std::vector<double> vals(8);
    for (int i = 0; i < 8; ++i) vals[static_cast<std::size_t>(i)] = i;
    const GridFunction u = grid_function_from_values(dom, std::move(vals));
    const GridFunction f = sample(ConstantFn{0.0}, dom);
    DenoiseConfig cfg;
    cfg.lambda = 2.5;
    cfg.delta = 0.4;
    const GridFunction g = energy_gradient(u, f, p, kernel, cfg);
    const double vol = dom.cell_volume();
    for (std::int64_t i = 0; i < dom.cell_count(); ++i)
        CHECK(g.values[static_cast<std::size_t>(i)] ==
              doctest::Approx(cfg.lambda * u.values[static_cast<std::size_t>(i)] * vol).epsilon(1e-14));
}

TEST_CASE("descent on a noiseless constant stays put") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 32);
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    const GridFunction f = sample(ConstantFn{5.0}, dom);
    DenoiseConfig cfg;
    cfg.lambda = 10.0;
    cfg.delta = 0.1;
    const auto [u, trace] = denoise(f, p, kernel, cfg);
    CHECK(u.values == f.values);
    CHECK(trace.iterations == 0);
    CHECK(trace.converged);
}

TEST_CASE("accepted-step energies never increase") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 48);
    const ExponentField p = field_from_expression(BumpField{2.0, -1.0, 0.5, 0.15, 0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    Rng rng(23);
    GridFunction f = sample(SineFn{1.0, 0.0}, dom);
    for (double& v : f.values) v += rng.uniform(-0.1, 0.1);
    f.evaluator = nullptr;
    DenoiseConfig cfg;
    cfg.lambda = 40.0;
    cfg.delta = 0.3;
    cfg.max_iters = 60;
    const auto [u, trace] = denoise(f, p, kernel, cfg);
    REQUIRE(trace.energies.size() >= 2);
    for (std::size_t k = 1; k < trace.energies.size(); ++k)
        CHECK(trace.energies[k] <= trace.energies[k - 1]);
}

TEST_CASE("huge fidelity weight pins u to f") {
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, 48);
    const ExponentField p = field_from_expression(ConstantField{2.0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    Rng rng(31);
    GridFunction f = sample(SineFn{1.0, 0.0}, dom);
    for (double& v : f.values) v += rng.uniform(-0.05, 0.05);
    f.evaluator = nullptr;
    DenoiseConfig cfg;
    cfg.delta = 0.1;
    cfg.max_iters = 400;
    cfg.stop_tol = 1e-13;
    double prev_gap = 1e300;
    for (double lambda : {1e2, 1e4, 1e6}) {
        cfg.lambda = lambda;
        const auto [u, trace] = denoise(f, p, kernel, cfg);
        double gap = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i)
            gap = std::max(gap, std::abs(u.values[i] - f.values[i]));
        CHECK(gap < prev_gap + 1e-15);
        prev_gap = gap;
        if (lambda == 1e6) CHECK(gap < 1e-3);
    }
}

TEST_CASE("step signal: flat noise is smoothed, the jump survives") {
    const int n = 96;
    const BoxDomain dom = BoxDomain::interval(0.0, 1.0, n);
    const ExponentField p = field_from_expression(BumpField{2.0, -1.0, 0.5, 0.15, 0}, 1);
    const KernelProfile kernel = make_model_kernel_admissible(p, 1, unit_box, 1.0);
    Rng rng(2024);
    std::vector<double> clean(n), noisy(n);
    for (int i = 0; i < n; ++i) {
        const double x = dom.center(i)[0];
        clean[static_cast<std::size_t>(i)] = x >= 0.5 ? 1.0 : 0.0;
        noisy[static_cast<std::size_t>(i)] =
            clean[static_cast<std::size_t>(i)] + rng.uniform(-0.05, 0.05);
    }
    const GridFunction f = grid_function_from_values(dom, noisy);
    DenoiseConfig cfg;
    cfg.lambda = 60.0;
    cfg.delta = 0.3;
    cfg.max_iters = 300;
    const auto [u, trace] = denoise(f, p, kernel, cfg);

    const auto stats = [&](const std::vector<double>& v, double lo, double hi) {
        double mean = 0.0;
        int count = 0;
        for (int i = 0; i < n; ++i) {
            const double x = dom.center(i)[0];
            if (x < lo || x > hi) continue;
            mean += v[static_cast<std::size_t>(i)] - clean[static_cast<std::size_t>(i)];
            ++count;
        }
        mean /= count;
        double var = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = dom.center(i)[0];
            if (x < lo || x > hi) continue;
            const double d = v[static_cast<std::size_t>(i)] - clean[static_cast<std::size_t>(i)] - mean;
            var += d * d;
        }
        return var / count;
    };
    const double var_in = stats(f.values, 0.0, 0.45) + stats(f.values, 0.55, 1.0);
    const double var_out = stats(u.values, 0.0, 0.45) + stats(u.values, 0.55, 1.0);
    CHECK(var_out < 0.5 * var_in);

    const auto plateau_mean = [&](const std::vector<double>& v, double lo, double hi) {
        double mean = 0.0;
        int count = 0;
        for (int i = 0; i < n; ++i) {
            const double x = dom.center(i)[0];
            if (x < lo || x > hi) continue;
            mean += v[static_cast<std::size_t>(i)];
            ++count;
        }
        return mean / count;
    };
    const double jump = plateau_mean(u.values, 0.55, 1.0) - plateau_mean(u.values, 0.0, 0.45);
    CHECK(std::abs(jump - 1.0) < 0.2);
}

TEST_CASE("config validation") {
    DenoiseConfig cfg;
    cfg.delta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.delta = 0.1;
    cfg.backtrack_factor = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.backtrack_factor = 0.5;
    cfg.initial_step = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
