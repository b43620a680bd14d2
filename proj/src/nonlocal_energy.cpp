#include "vexlab/nonlocal_energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vexlab/parallel.hpp"
#include "vexlab/quadrature.hpp"
#include "vexlab/sphere_constants.hpp"

namespace vexlab {

namespace {

void check_inputs(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
                  double delta) {
    if (!(delta > 0.0)) throw std::domain_error("nonlocal energy: delta must be > 0");
    if (u.domain.dim != p.dimension || u.domain.dim != kernel.dim)
        throw std::invalid_argument("nonlocal energy: dimension mismatch between u, p and kernel");
}

KernelAt bind_kernel(const KernelProfile& k, const Point& x) {
    if (k.bind) return k.bind(x);
    // generic kernels: sample through phi; breakpoint-aware callers still work
    KernelAt ka;
    ka.p = k.p_field(x);
    ka.coeff = 0.0;
    ka.power = ka.p + 1.0;
    ka.flat = 0.0;
    return ka;
}

// Evaluation of phi at bound x, falling back to the generic evaluator for
// kernels without a fast path.
struct BoundPhi {
    const KernelProfile* kernel;
    Point x;
    KernelAt ka;
    bool fast;

    BoundPhi(const KernelProfile& k, const Point& at)
        : kernel(&k), x(at), ka(bind_kernel(k, at)), fast(static_cast<bool>(k.bind)) {}

    double operator()(double t) const { return fast ? ka.eval(t) : kernel->phi(x, t); }
};

struct RowTotals {
    std::vector<double> sums;
    std::atomic<std::uint64_t> pairs{0};
};

// ---------------------------------------------------------------- far field

// Plain midpoint pair sum for row i; skips ordered pairs with cell Chebyshev
// distance <= skip (skip = 0 excludes just the diagonal).
double far_row(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
               double delta, std::int64_t i, std::int64_t skip, std::uint64_t& pairs) {
    const BoxDomain& d = u.domain;
    const std::int64_t n = d.cell_count();
    const Point xi = d.center(i);
    const BoundPhi phi(kernel, xi);
    const double pi = p(xi);
    const double dpow = std::pow(delta, pi);
    const double vol2 = d.cell_volume() * d.cell_volume();
    const double ui = u.values[static_cast<std::size_t>(i)];
    const double exponent = -(static_cast<double>(d.dim) + pi);
    Accumulator acc;
    if (d.dim == 1) {
        const double h = d.cell_size(0);
        for (std::int64_t j = 0; j < n; ++j) {
            const std::int64_t off = j > i ? j - i : i - j;
            if (off <= skip) continue;
            const double t = std::abs(ui - u.values[static_cast<std::size_t>(j)]) / delta;
            const double fv = phi(t);
            ++pairs;
            if (fv == 0.0) continue;
            acc.add(dpow * fv * std::pow(static_cast<double>(off) * h, exponent) * vol2);
        }
    } else {
        const std::int64_t nx = d.resolution[0];
        const std::int64_t ix = i % nx;
        const std::int64_t iy = i / nx;
        for (std::int64_t j = 0; j < n; ++j) {
            const std::int64_t jx = j % nx;
            const std::int64_t jy = j / nx;
            const std::int64_t cheb = std::max(std::abs(jx - ix), std::abs(jy - iy));
            if (cheb <= skip) continue;
            const double t = std::abs(ui - u.values[static_cast<std::size_t>(j)]) / delta;
            const double fv = phi(t);
            ++pairs;
            if (fv == 0.0) continue;
            const double dist = distance(xi, d.center(j));
            acc.add(dpow * fv * std::pow(dist, exponent) * vol2);
        }
    }
    return acc.value();
}

// ------------------------------------------------------------- near field 1D

// Radii where |u(xq + s r) - u(xq)| crosses delta*t_break, located by panel
// scan plus bisection. Edges must be sorted ascending.
void collect_breakpoint_radii(const GridFunction& u, double xq, double fu, double sgn,
                              const std::vector<double>& edges, double target,
                              std::vector<double>& out) {
    const auto dv = [&](double r) {
        return std::abs(u.value_at({xq + sgn * r, 0.0}) - fu) - target;
    };
    double prev = dv(edges.front());
    for (std::size_t k = 1; k < edges.size(); ++k) {
        const double cur = dv(edges[k]);
        if (prev == 0.0 || prev * cur < 0.0) {
            double a = edges[k - 1], b = edges[k];
            double fa = prev;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = dv(m);
                if ((fa <= 0.0 && fm <= 0.0) || (fa > 0.0 && fm > 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        prev = cur;
    }
}

double near_row_1d(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
                   double delta, std::int64_t i, std::int64_t K, const PairSumOptions& opts,
                   std::uint64_t& pairs) {
    const BoxDomain& d = u.domain;
    const double h = d.cell_size(0);
    const std::int64_t n = d.cell_count();
    const std::int64_t jlo = std::max<std::int64_t>(0, i - K);
    const std::int64_t jhi = std::min<std::int64_t>(n - 1, i + K);
    const double ylo = d.lower[0] + static_cast<double>(jlo) * h;
    const double yhi = d.lower[0] + static_cast<double>(jhi + 1) * h;
    const Point ci = d.center(i);

    const auto gx = gauss_nodes(opts.gauss_x);
    const auto gw = gauss_weights(opts.gauss_x);
    const auto rx = gauss_nodes(opts.gauss_r);
    const auto rw = gauss_weights(opts.gauss_r);

    Accumulator acc;
    std::vector<double> edges, splits;
    for (std::size_t q = 0; q < gx.size(); ++q) {
        const double xq = ci[0] + 0.5 * h * gx[q];
        const double wq = 0.5 * h * gw[q];
        const BoundPhi phi(kernel, {xq, 0.0});
        const double pq = p({xq, 0.0});
        const double dpow = std::pow(delta, pq);
        const double fu = u.value_at({xq, 0.0});
        for (double sgn : {1.0, -1.0}) {
            const double rmax = sgn > 0 ? yhi - xq : xq - ylo;
            if (!(rmax > 0.0)) continue;
            double r0 = opts.r_cut * h;
            if (r0 >= rmax) r0 = rmax * 1e-8;
            edges.clear();
            edges.push_back(r0);
            while (edges.back() < rmax) edges.push_back(std::min(edges.back() * 2.0, rmax));
            splits.clear();
            for (double tb : kernel.t_breakpoints)
                collect_breakpoint_radii(u, xq, fu, sgn, edges, delta * tb, splits);
            if (!splits.empty()) {
                edges.insert(edges.end(), splits.begin(), splits.end());
                std::sort(edges.begin(), edges.end());
                edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            }
            double sum = 0.0;
            for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
                const double a = edges[k], b = edges[k + 1];
                const double half = 0.5 * (b - a);
                const double mid = 0.5 * (a + b);
                double panel = 0.0;
                for (std::size_t m = 0; m < rx.size(); ++m) {
                    const double r = mid + half * rx[m];
                    const double t = std::abs(u.value_at({xq + sgn * r, 0.0}) - fu) / delta;
                    const double fv = phi(t);
                    ++pairs;
                    if (fv == 0.0) continue;
                    panel += rw[m] * fv * std::pow(r, -(1.0 + pq));
                }
                sum += half * panel;
            }
            acc.add(wq * dpow * sum);
        }
    }
    return acc.value();
}

// ------------------------------------------------------------- near field 2D

// Mismatched-order tensor Gauss over cell_i x cell_j (orders differ so nodes
// never coincide; the x=y singularity is integrable in 2D). Lower accuracy
// than the 1D scheme but 2D runs are desk-scale sanity checks only.
double near_row_2d(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
                   double delta, std::int64_t i, std::int64_t K, std::uint64_t& pairs) {
    const BoxDomain& d = u.domain;
    const std::int64_t nx = d.resolution[0];
    const std::int64_t ny = d.resolution[1];
    const std::int64_t ix = i % nx;
    const std::int64_t iy = i / nx;
    const double hx = d.cell_size(0);
    const double hy = d.cell_size(1);
    const Point ci = d.center(i);

    const auto ax = gauss_nodes(4);
    const auto aw = gauss_weights(4);
    const auto bx = gauss_nodes(5);
    const auto bw = gauss_weights(5);

    Accumulator acc;
    for (std::int64_t jy = std::max<std::int64_t>(0, iy - K); jy <= std::min(ny - 1, iy + K); ++jy) {
        for (std::int64_t jx = std::max<std::int64_t>(0, ix - K); jx <= std::min(nx - 1, ix + K);
             ++jx) {
            const Point cj = d.center(jx + jy * nx);
            double cell_sum = 0.0;
            for (std::size_t qx = 0; qx < ax.size(); ++qx) {
                for (std::size_t qy = 0; qy < ax.size(); ++qy) {
                    const Point X{ci[0] + 0.5 * hx * ax[qx], ci[1] + 0.5 * hy * ax[qy]};
                    const double wX = 0.25 * hx * hy * aw[qx] * aw[qy];
                    const BoundPhi phi(kernel, X);
                    const double pX = p(X);
                    const double dpow = std::pow(delta, pX);
                    const double fu = u.value_at(X);
                    double inner = 0.0;
                    for (std::size_t ry = 0; ry < bx.size(); ++ry) {
                        for (std::size_t rxn = 0; rxn < bx.size(); ++rxn) {
                            const Point Y{cj[0] + 0.5 * hx * bx[rxn], cj[1] + 0.5 * hy * bx[ry]};
                            const double wY = 0.25 * hx * hy * bw[rxn] * bw[ry];
                            const double t = std::abs(u.value_at(Y) - fu) / delta;
                            const double fv = phi(t);
                            ++pairs;
                            if (fv == 0.0) continue;
                            inner += wY * fv * std::pow(distance(X, Y), -(2.0 + pX));
                        }
                    }
                    cell_sum += wX * dpow * inner;
                }
            }
            acc.add(cell_sum);
        }
    }
    return acc.value();
}

}  // namespace

EnergyResult lambda_direct(const GridFunction& u, const ExponentField& p,
                           const KernelProfile& kernel, double delta, const PairSumOptions& opts) {
    check_inputs(u, p, kernel, delta);
    const BoxDomain& d = u.domain;
    const std::int64_t n = d.cell_count();
    std::int64_t K = 0;
    if (opts.near_field) {
        const double h = d.max_cell_size();
        K = std::max<std::int64_t>(opts.near_field_min_cells,
                                   static_cast<std::int64_t>(std::ceil(opts.near_field_delta_factor * delta / h)));
        K = std::min<std::int64_t>(K, n - 1);
    }
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
    std::atomic<std::uint64_t> pair_count{0};
    parallel_for(n, opts.threads, [&](std::int64_t b, std::int64_t e) {
        std::uint64_t local_pairs = 0;
        for (std::int64_t i = b; i < e; ++i) {
            double row = far_row(u, p, kernel, delta, i, opts.near_field ? K : 0, local_pairs);
            if (opts.near_field) {
                row += (d.dim == 1) ? near_row_1d(u, p, kernel, delta, i, K, opts, local_pairs)
                                    : near_row_2d(u, p, kernel, delta, i, K, local_pairs);
            }
            rows[static_cast<std::size_t>(i)] = row;
        }
        pair_count.fetch_add(local_pairs, std::memory_order_relaxed);
    });
    EnergyResult res;
    res.value = pairwise_sum(rows);
    res.method = EnergyMethod::direct;
    res.pairs_evaluated = pair_count.load();
    return res;
}

EnergyResult lambda_polar(const GridFunction& u, const ExponentField& p,
                          const KernelProfile& kernel, double delta, const PolarOptions& opts) {
    check_inputs(u, p, kernel, delta);
    if (!u.has_closed_form())
        throw std::invalid_argument(
            "lambda_polar: u has no off-grid evaluator (closed form required for R^n mode)");
    if (!(opts.h_min > 0.0) || !(opts.h_max > opts.h_min) || opts.h_nodes < 2)
        throw std::invalid_argument("lambda_polar: invalid h-grid");
    const BoxDomain& d = u.domain;
    const std::int64_t n = d.cell_count();

    std::vector<Point> dirs;
    std::vector<double> dir_w;
    if (d.dim == 1) {
        dirs = {{1.0, 0.0}, {-1.0, 0.0}};
        dir_w = {1.0, 1.0};
    } else {
        const int m = std::max(4, opts.angular_nodes);
        dirs.reserve(m);
        dir_w.assign(m, 2.0 * 3.14159265358979323846 / m);
        for (int k = 0; k < m; ++k) {
            const double th = 2.0 * 3.14159265358979323846 * (k + 0.5) / m;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
    }

    // log-spaced h grid with trapezoid weights in ln h (integrand times h)
    std::vector<double> hg(static_cast<std::size_t>(opts.h_nodes));
    const double l0 = std::log(opts.h_min);
    const double l1 = std::log(opts.h_max);
    for (int k = 0; k < opts.h_nodes; ++k)
        hg[static_cast<std::size_t>(k)] = std::exp(l0 + (l1 - l0) * k / (opts.h_nodes - 1.0));
    std::vector<double> lw(hg.size(), 0.0);
    for (std::size_t k = 0; k < hg.size(); ++k) {
        const double left = k == 0 ? 0.0 : 0.5 * (std::log(hg[k]) - std::log(hg[k - 1]));
        const double right = k + 1 == hg.size() ? 0.0 : 0.5 * (std::log(hg[k + 1]) - std::log(hg[k]));
        lw[k] = left + right;
    }

    std::vector<double> cells(static_cast<std::size_t>(n), 0.0);
    std::atomic<std::uint64_t> evals{0};
    parallel_for(n, opts.threads, [&](std::int64_t b, std::int64_t e) {
        std::uint64_t local = 0;
        for (std::int64_t i = b; i < e; ++i) {
            const Point x = d.center(i);
            const BoundPhi phi(kernel, x);
            const double px = p(x);
            const double ux = u.evaluator(x);
            Accumulator acc;
            for (std::size_t w = 0; w < dirs.size(); ++w) {
                const Point& om = dirs[w];
                double sum = 0.0;
                double f_hmin = 0.0;
                for (std::size_t k = 0; k < hg.size(); ++k) {
                    const double hh = hg[k];
                    const Point y{x[0] + delta * hh * om[0], x[1] + delta * hh * om[1]};
                    const double t = std::abs(u.evaluator(y) - ux) / delta;
                    const double fv = phi(t);
                    ++local;
                    if (fv != 0.0) {
                        const double f = fv * std::pow(hh, -(px + 1.0));
                        sum += lw[k] * f * hh;  // d(ln h) weights
                        if (k == 0) f_hmin = f;
                    }
                }
                // [0, h_min] triangle; the integrand vanishes at h=0
                sum += 0.5 * hg.front() * f_hmin;
                acc.add(dir_w[w] * sum);
            }
            cells[static_cast<std::size_t>(i)] = acc.value() * d.cell_volume();
        }
        evals.fetch_add(local, std::memory_order_relaxed);
    });

    EnergyResult res;
    res.value = pairwise_sum(cells);
    res.method = EnergyMethod::polar;
    res.pairs_evaluated = evals.load();
    // b |S^{n-1}| |Omega| / (p^- h_max^{p^-}); zero for constant u, whose
    // differences vanish identically
    const auto [umin, umax] = std::minmax_element(u.values.begin(), u.values.end());
    const bool constant_u = *umin == *umax;
    res.tail_bound = constant_u ? 0.0
                                : kernel.upper_b * sphere_measure(d.dim) * d.volume() /
                                      (p.p_minus * std::pow(opts.h_max, p.p_minus));
    return res;
}

double indicator_functional(const GridFunction& u, const ExponentField& p, double delta,
                            const PairSumOptions& opts) {
    if (!(delta > 0.0)) throw std::domain_error("indicator_functional: delta must be > 0");
    // level-exceedance sum == lambda_direct with the unit indicator kernel
    KernelProfile chi;
    chi.dim = p.dimension;
    chi.p_field = p;
    chi.phi = [](const Point&, double t) { return t > 1.0 ? 1.0 : 0.0; };
    chi.upper_a = 0.0;
    chi.upper_b = 1.0;
    chi.lower_beta = 1.0;
    chi.monotone = true;
    chi.t_breakpoints = {1.0};
    chi.constant_tail_from = 1.0;
    chi.family = "unit-indicator";
    const ExponentField pf = p;
    chi.bind = [pf](const Point& x) {
        KernelAt ka;
        ka.p = pf(x);
        ka.coeff = 0.0;
        ka.power = ka.p + 1.0;
        ka.flat = 1.0;
        return ka;
    };
    return lambda_direct(u, p, chi, delta, opts).value;
}

double epsilon_functional(const GridFunction& u, const ExponentField& p, double eps, int threads) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("epsilon_functional: eps must lie in (0, 1/2)");
    if (u.domain.dim != p.dimension)
        throw std::invalid_argument("epsilon_functional: dimension mismatch");
    const BoxDomain& d = u.domain;
    const std::int64_t n = d.cell_count();
    const double vol2 = d.cell_volume() * d.cell_volume();
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
    parallel_for(n, threads, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) {
            const Point xi = d.center(i);
            const double pi = p(xi);
            const double ui = u.values[static_cast<std::size_t>(i)];
            Accumulator acc;
            for (std::int64_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double du = std::abs(ui - u.values[static_cast<std::size_t>(j)]);
                if (du == 0.0) continue;
                const double dist = distance(xi, d.center(j));
                acc.add(eps * std::pow(du, pi + eps) *
                        std::pow(dist, -(static_cast<double>(d.dim) + pi)) * vol2);
            }
            rows[static_cast<std::size_t>(i)] = acc.value();
        }
    });
    return pairwise_sum(rows);
}

std::pair<double, double> upper_bound_rhs(const GridFunction& u, const ExponentField& p) {
    const GridFunction g = gradient_magnitude(u);
    const double vol = u.domain.cell_volume();
    double hi = 0.0, lo = 0.0;
    for (double gv : g.values) {
        hi += std::pow(gv, p.p_plus);
        lo += std::pow(gv, p.p_minus);
    }
    return {hi * vol, lo * vol};
}

double pair_summand(const GridFunction& u, const ExponentField& p, const KernelProfile& kernel,
                    double delta, std::int64_t i, std::int64_t j) {
    if (i == j) throw std::invalid_argument("pair_summand: diagonal pairs are excluded");
    const BoxDomain& d = u.domain;
    const Point xi = d.center(i);
    const double pi = p(xi);
    const double du = std::abs(u.values[static_cast<std::size_t>(i)] - u.values[static_cast<std::size_t>(j)]);
    const double dist = distance(xi, d.center(j));
    return std::pow(delta, pi) * kernel.phi(xi, du / delta) *
           std::pow(dist, -(static_cast<double>(d.dim) + pi)) * d.cell_volume() * d.cell_volume();
}

}  // namespace vexlab
