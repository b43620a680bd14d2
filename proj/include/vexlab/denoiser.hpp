#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vexlab/nonlocal_energy.hpp"

namespace vexlab {

/// Parameters for minimizing E(u) = Lambda_delta(u) + (lambda/2) sum (u-f)^2 vol
/// by gradient descent with Armijo backtracking. The nonlocal term is the
/// plain pair sum, so the analytic gradient below is exact for the discrete
/// objective.
struct DenoiseConfig {
    double lambda = 1.0;
    double delta = 0.1;
    int max_iters = 200;
    double initial_step = 1e-2;
    double backtrack_factor = 0.5;  // in (0,1)
    double stop_tol = 1e-8;         // relative energy decrease
    double armijo_c = 1e-4;
    int threads = 0;

    void validate() const;
};

struct DenoiseTrace {
    std::vector<double> energies;    // accepted-step energies, non-increasing
    std::vector<double> step_sizes;
    std::vector<double> grad_norms;
    int iterations = 0;
    bool converged = false;          // hit stop_tol before max_iters
    bool line_search_stalled = false;
};

double total_energy(const GridFunction& u, const GridFunction& f, const ExponentField& p,
                    const KernelProfile& kernel, const DenoiseConfig& cfg);

/// Exact gradient of the discrete objective. Cell i collects pair (i,j) and
/// (j,i) contributions with weight delta^{p(x)-1} phi'(x,|u_i-u_j|/delta)
/// sign(u_i-u_j) |x-y|^{-(n+p(x))} vol^2, x being the pair's first argument;
/// the left derivative is used at kinks. Refuses non-differentiable kernels.
GridFunction energy_gradient(const GridFunction& u, const GridFunction& f,
                             const ExponentField& p, const KernelProfile& kernel,
                             const DenoiseConfig& cfg);

std::pair<GridFunction, DenoiseTrace> denoise(const GridFunction& f, const ExponentField& p,
                                              const KernelProfile& kernel,
                                              const DenoiseConfig& cfg);

void write_trace_csv(std::ostream& out, const DenoiseTrace& trace, const std::string& config_echo);

}  // namespace vexlab
