#include "vexlab/convergence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace vexlab {

namespace {

void check_schedule(const std::vector<double>& schedule) {
    if (schedule.empty()) throw std::invalid_argument("delta sweep: empty schedule");
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!(schedule[k] > 0.0)) throw std::invalid_argument("delta sweep: deltas must be > 0");
        if (k > 0 && !(schedule[k] < schedule[k - 1]))
            throw std::invalid_argument("delta sweep: schedule must be strictly decreasing");
    }
}

double evaluate(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
                double delta, const SweepOptions& opts) {
    switch (opts.method) {
        case SweepMethod::direct: return lambda_direct(u, p, kernel, delta, opts.pair).value;
        case SweepMethod::polar: return lambda_polar(u, p, kernel, delta, opts.polar).value;
        case SweepMethod::indicator: return indicator_functional(u, p, delta, opts.pair);
    }
    throw std::logic_error("delta sweep: unknown method");
}

}  // namespace

ConvergenceReport delta_sweep(const GridFunction& u, const ExponentField& p,
                              const KernelProfile& kernel, const std::vector<double>& schedule,
                              const SweepOptions& opts) {
    check_schedule(schedule);
    ConvergenceReport rep;
    rep.deltas = schedule;
    rep.assumed_order = opts.assumed_order;
    if (opts.method == SweepMethod::indicator) {
        rep.reference_energy = k_weighted_local_energy(u, p);
        rep.reference_kind = "k-weighted-local-energy";
    } else {
        rep.reference_energy = local_energy(u, p);
        rep.reference_kind = "local-energy";
    }
    // The p^-=1 limit is proven only for C^1 functions; grid-only data cannot
    // certify that, so flag the scope gap instead of claiming the limit.
    rep.p_minus_one_scope_warning = p.p_minus <= 1.0 && !u.has_closed_form();

    const double resolved_at = opts.resolved_factor * u.domain.max_cell_size();
    for (double delta : schedule) {
        const bool res = delta >= resolved_at;
        if (!res && !opts.allow_under_resolved)
            throw std::invalid_argument("delta sweep: delta " + std::to_string(delta) +
                                        " is under-resolved for this grid");
        rep.resolved.push_back(res);
        rep.lambdas.push_back(evaluate(u, p, kernel, delta, opts));
        rep.rel_errors.push_back(rep.reference_energy > 0.0
                                     ? (rep.lambdas.back() - rep.reference_energy) / rep.reference_energy
                                     : 0.0);
    }

    // least-squares fit of log|rel_err| vs log(delta) over resolved entries
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        if (!rep.resolved[k]) continue;
        const double err = std::abs(rep.rel_errors[k]);
        if (err > 0.0 && rep.reference_energy > 0.0) pts.push_back({std::log(schedule[k]), std::log(err)});
    }
    if (pts.size() >= 3) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = pts.size() * sxx - sx * sx;
        if (denom > 0.0) rep.fitted_rate = (pts.size() * sxy - sx * sy) / denom;
    }

    // Richardson from the last two resolved entries, assuming lambda(delta) =
    // L + C delta^q with q = assumed_order
    std::vector<std::size_t> res_idx;
    for (std::size_t k = 0; k < schedule.size(); ++k)
        if (rep.resolved[k]) res_idx.push_back(k);
    if (res_idx.size() >= 2) {
        const std::size_t k1 = res_idx[res_idx.size() - 2];
        const std::size_t k2 = res_idx[res_idx.size() - 1];
        const double r = std::pow(schedule[k2] / schedule[k1], opts.assumed_order);
        rep.extrapolated_limit = (rep.lambdas[k2] - r * rep.lambdas[k1]) / (1.0 - r);
    } else if (res_idx.size() == 1) {
        rep.extrapolated_limit = rep.lambdas[res_idx[0]];
    }
    return rep;
}

LiminfResult liminf_check(const GridFunction& u, const ExponentField& p,
                          const KernelProfile& kernel, const std::vector<double>& schedule,
                          double tol, LiminfVariant variant, const SweepOptions& opts) {
    if (!kernel.monotone)
        throw std::invalid_argument("liminf_check: kernel lacks the monotonicity hypothesis (Hp3)");
    if (variant == LiminfVariant::sufficient_condition) {
        if (!kernel.lower_alpha)
            throw std::invalid_argument(
                "liminf_check: kernel lacks the lower power bound (phi1); refused for the "
                "sufficient-condition variant");
        if (!kernel.lower_beta)
            throw std::invalid_argument(
                "liminf_check: kernel lacks the lower flat bound (phi2); refused for the "
                "sufficient-condition variant");
        if (!(p.p_minus > 1.0))
            throw std::invalid_argument(
                "liminf_check: the sufficient-condition variant requires p^- > 1");
    }
    ConvergenceReport rep = delta_sweep(u, p, kernel, schedule, opts);
    LiminfResult res;
    res.reference_energy = rep.reference_energy;
    bool any = false;
    double min_lambda = 0.0;
    for (std::size_t k = 0; k < rep.lambdas.size(); ++k) {
        if (!rep.resolved[k]) continue;
        if (!any || rep.lambdas[k] < min_lambda) min_lambda = rep.lambdas[k];
        any = true;
    }
    if (!any) throw std::invalid_argument("liminf_check: no resolved deltas in the schedule");
    res.min_lambda = min_lambda;
    if (rep.reference_energy == 0.0) {
        res.passed = min_lambda >= 0.0;
        res.worst_margin = min_lambda;
    } else {
        res.passed = min_lambda >= (1.0 - tol) * rep.reference_energy;
        res.worst_margin = min_lambda / rep.reference_energy - (1.0 - tol);
    }
    return res;
}

BoundCheckResult bound_check(const GridFunction& u, const ExponentField& p,
                             const KernelProfile& kernel, const std::vector<double>& schedule,
                             const SweepOptions& opts) {
    if (!(p.p_minus > 1.0))
        throw std::invalid_argument("bound_check: requires p^- > 1");
    check_schedule(schedule);
    const auto [hi, lo] = upper_bound_rhs(u, p);
    const double denom = hi + lo;
    BoundCheckResult res;
    res.deltas = schedule;
    if (denom == 0.0) {
        res.vacuous = true;
        res.passed = true;
        res.ratios.assign(schedule.size(), 0.0);
        return res;
    }
    for (double delta : schedule)
        res.ratios.push_back(evaluate(u, p, kernel, delta, opts) / denom);
    res.c_star = res.ratios.front();
    res.max_ratio = *std::max_element(res.ratios.begin(), res.ratios.end());
    res.passed = res.max_ratio <= 1.05 * res.c_star;
    return res;
}

void write_sweep_csv(std::ostream& out, const ConvergenceReport& rep,
                     const std::string& config_echo) {
    out << "# " << config_echo << '\n';
    {
        char obuf[64];
        std::snprintf(obuf, sizeof obuf, "# assumed_order=%.17g reference=%s", rep.assumed_order,
                      rep.reference_kind.c_str());
        out << obuf << '\n';
    }
    if (rep.p_minus_one_scope_warning)
        out << "# warning: p^- = 1 with grid-only u; the delta->0 limit is only proven for C^1 "
               "functions, treat the fit as diagnostic\n";
    out << "delta,lambda,local_energy,rel_error,resolved\n";
    char buf[160];
    for (std::size_t k = 0; k < rep.deltas.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d", rep.deltas[k], rep.lambdas[k],
                      rep.reference_energy, rep.rel_errors[k], rep.resolved[k] ? 1 : 0);
        out << buf << '\n';
    }
    if (rep.fitted_rate) {
        std::snprintf(buf, sizeof buf, "rate=%.17g", *rep.fitted_rate);
        out << buf << '\n';
    } else {
        out << "rate=unavailable\n";
    }
    if (rep.extrapolated_limit) {
        std::snprintf(buf, sizeof buf, "limit=%.17g", *rep.extrapolated_limit);
        out << buf << '\n';
    } else {
        out << "limit=unavailable\n";
    }
}

}  // namespace vexlab
