#include "vexlab/denoiser.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "vexlab/parallel.hpp"
#include "vexlab/quadrature.hpp"

namespace vexlab {

void DenoiseConfig::validate() const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("denoise: lambda must be >= 0");
    if (!(delta > 0.0)) throw std::invalid_argument("denoise: delta must be > 0");
    if (max_iters < 0) throw std::invalid_argument("denoise: max_iters must be >= 0");
    if (!(initial_step > 0.0)) throw std::invalid_argument("denoise: initial step must be > 0");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
        throw std::invalid_argument("denoise: backtracking factor must lie in (0,1)");
    if (!(stop_tol > 0.0)) throw std::invalid_argument("denoise: stop tolerance must be > 0");
}

namespace {

void check_shapes(const GridFunction& u, const GridFunction& f) {
    if (!u.domain.same_grid(f.domain))
        throw std::invalid_argument("denoise: u and f live on different grids");
}

double fidelity(const GridFunction& u, const GridFunction& f, double lambda) {
    const double vol = u.domain.cell_volume();
    Accumulator acc;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double d = u.values[i] - f.values[i];
        acc.add(d * d);
    }
    return 0.5 * lambda * acc.value() * vol;
}

}  // namespace

double total_energy(const GridFunction& u, const GridFunction& f, const ExponentField& p,
                    const KernelProfile& kernel, const DenoiseConfig& cfg) {
    check_shapes(u, f);
    PairSumOptions opts;
    opts.near_field = false;  // plain sum: the analytic gradient is exact for it
    opts.threads = cfg.threads;
    return lambda_direct(u, p, kernel, cfg.delta, opts).value + fidelity(u, f, cfg.lambda);
}

GridFunction energy_gradient(const GridFunction& u, const GridFunction& f,
                             const ExponentField& p, const KernelProfile& kernel,
                             const DenoiseConfig& cfg) {
    check_shapes(u, f);
    if (!kernel.differentiable || !kernel.phi_slope)
        throw std::invalid_argument(
            "energy_gradient: kernel family is not piecewise differentiable (indicator kernels "
            "are refused)");
    const BoxDomain& d = u.domain;
    const std::int64_t n = d.cell_count();
    const double vol = d.cell_volume();
    const double vol2 = vol * vol;
    const double delta = cfg.delta;

    GridFunction g;
    g.domain = d;
    g.values.assign(u.values.size(), 0.0);
    parallel_for(n, cfg.threads, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t k = b; k < e; ++k) {
            const Point xk = d.center(k);
            const double uk = u.values[static_cast<std::size_t>(k)];
            const double pk = p(xk);
            const double wk = std::pow(delta, pk - 1.0);
            Accumulator acc;
            for (std::int64_t j = 0; j < n; ++j) {
                if (j == k) continue;
                const Point xj = d.center(j);
                const double uj = u.values[static_cast<std::size_t>(j)];
                const double diff = uk - uj;
                const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
                if (sgn == 0.0) continue;
                const double t = std::abs(diff) / delta;
                // pair (k,j): first argument k
                const double slope_k = kernel.phi_slope(xk, t);
                if (slope_k != 0.0) {
                    const double dist = distance(xk, xj);
                    acc.add(wk * slope_k * sgn * std::pow(dist, -(static_cast<double>(d.dim) + pk)) *
                            vol2);
                }
                // pair (j,k): first argument j, d|u_j-u_k|/du_k = +sign(u_k-u_j)
                const double pj = p(xj);
                const double slope_j = kernel.phi_slope(xj, t);
                if (slope_j != 0.0) {
                    const double dist = distance(xk, xj);
                    acc.add(std::pow(delta, pj - 1.0) * slope_j * sgn *
                            std::pow(dist, -(static_cast<double>(d.dim) + pj)) * vol2);
                }
            }
            acc.add(cfg.lambda * (uk - f.values[static_cast<std::size_t>(k)]) * vol);
            g.values[static_cast<std::size_t>(k)] = acc.value();
        }
    });
    return g;
}

std::pair<GridFunction, DenoiseTrace> denoise(const GridFunction& f, const ExponentField& p,
                                              const KernelProfile& kernel,
                                              const DenoiseConfig& cfg) {
    cfg.validate();
    GridFunction u = f;
    DenoiseTrace trace;
    double energy = total_energy(u, f, p, kernel, cfg);
    trace.energies.push_back(energy);
    double step = cfg.initial_step;

    for (int it = 0; it < cfg.max_iters; ++it) {
        const GridFunction grad = energy_gradient(u, f, p, kernel, cfg);
        double gn2 = 0.0;
        for (double gv : grad.values) gn2 += gv * gv;
        const double gnorm = std::sqrt(gn2);
        trace.grad_norms.push_back(gnorm);
        if (gn2 == 0.0) {
            trace.converged = true;
            break;
        }
        // Armijo backtracking on E(u - s g) <= E(u) - c s |g|^2
        double s = step;
        bool accepted = false;
        GridFunction trial = u;
        for (int bt = 0; bt < 80; ++bt) {
            for (std::size_t i = 0; i < u.values.size(); ++i)
                trial.values[i] = u.values[i] - s * grad.values[i];
            const double trial_energy = total_energy(trial, f, p, kernel, cfg);
            if (trial_energy <= energy - cfg.armijo_c * s * gn2) {
                accepted = true;
                const double drop = energy - trial_energy;
                u.values.swap(trial.values);
                energy = trial_energy;
                trace.energies.push_back(energy);
                trace.step_sizes.push_back(s);
                ++trace.iterations;
                step = std::min(s / cfg.backtrack_factor, 1e6);  // gentle growth for the next try
                if (drop <= cfg.stop_tol * std::max(std::abs(energy), 1e-300)) {
                    trace.converged = true;
                }
                break;
            }
            s *= cfg.backtrack_factor;
        }
        if (!accepted) {
            trace.line_search_stalled = true;
            break;
        }
        if (trace.converged) break;
    }
    // grid functions produced by descent have no closed form
    u.evaluator = nullptr;
    return {std::move(u), std::move(trace)};
}

void write_trace_csv(std::ostream& out, const DenoiseTrace& trace, const std::string& config_echo) {
    out << "# " << config_echo << '\n';
    out << "iteration,energy,step,grad_norm\n";
    char buf[160];
    for (std::size_t k = 0; k < trace.energies.size(); ++k) {
        const double s = k == 0 ? 0.0 : trace.step_sizes[k - 1];
        const double gn = k < trace.grad_norms.size() ? trace.grad_norms[k] : 0.0;
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g", k, trace.energies[k], s, gn);
        out << buf << '\n';
    }
    out << "iterations=" << trace.iterations << '\n';
    out << "converged=" << (trace.converged ? 1 : 0) << '\n';
}

}  // namespace vexlab
