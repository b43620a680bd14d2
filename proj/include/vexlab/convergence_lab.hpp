#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vexlab/nonlocal_energy.hpp"

namespace vexlab {

enum class SweepMethod { direct, polar, indicator };

struct SweepOptions {
    SweepMethod method = SweepMethod::direct;
    double assumed_order = 1.0;     // Richardson extrapolation order in delta
    double resolved_factor = 4.0;   // delta >= factor * cell size counts as resolved
    bool allow_under_resolved = true;
    PairSumOptions pair;
    PolarOptions polar;
};

struct ConvergenceReport {
    std::vector<double> deltas;       // strictly decreasing schedule
    std::vector<double> lambdas;
    std::vector<bool> resolved;
    std::vector<double> rel_errors;   // vs reference energy, when it is > 0
    double reference_energy = 0.0;    // local energy (K-weighted for the indicator method)
    std::string reference_kind;
    std::optional<double> fitted_rate;        // least squares on resolved entries (needs >= 3)
    std::optional<double> extrapolated_limit; // Richardson from the last two resolved entries
    double assumed_order = 1.0;
    bool p_minus_one_scope_warning = false;   // p^-=1 with a non-closed-form u
};

/// Runs the schedule, computes the reference energy once, flags the resolved
/// regime, fits log(error) vs log(delta) over resolved entries and Richardson-
/// extrapolates from the last two resolved entries.
ConvergenceReport delta_sweep(const GridFunction& u, const ExponentField& p,
                              const KernelProfile& kernel, const std::vector<double>& schedule,
                              const SweepOptions& opts = {});

struct LiminfResult {
    bool passed = false;
    double worst_margin = 0.0;  // min over resolved delta of lambda/reference - (1 - tol)
    double reference_energy = 0.0;
    double min_lambda = 0.0;
};

enum class LiminfVariant { prop_c1, sufficient_condition };

/// Checks min over resolved delta of Lambda_delta >= (1-tol) * local energy.
/// The C1-limit variant requires a monotone kernel (Hp3); the sufficient-
/// condition variant additionally requires the lower bounds (phi1)/(phi2) and
/// p^- > 1, and refuses kernels that lack them, naming the missing hypothesis.
LiminfResult liminf_check(const GridFunction& u, const ExponentField& p,
                          const KernelProfile& kernel, const std::vector<double>& schedule,
                          double tol, LiminfVariant variant = LiminfVariant::prop_c1,
                          const SweepOptions& opts = {});

struct BoundCheckResult {
    std::vector<double> deltas;
    std::vector<double> ratios;  // lambda / (grad-norm sum)
    double c_star = 0.0;         // ratio at the coarsest delta
    double max_ratio = 0.0;
    bool vacuous = false;        // zero denominator (constant u)
    bool passed = false;         // max_ratio <= 1.05 * c_star (or vacuous)
};

/// Ratio series Lambda_delta / (||grad u||_{p+}^{p+} + ||grad u||_{p-}^{p-}).
/// Requires p^- > 1; the gradient-norm bound is not asserted at p^- = 1.
BoundCheckResult bound_check(const GridFunction& u, const ExponentField& p,
                             const KernelProfile& kernel, const std::vector<double>& schedule,
                             const SweepOptions& opts = {});

void write_sweep_csv(std::ostream& out, const ConvergenceReport& rep,
                     const std::string& config_echo);

}  // namespace vexlab
