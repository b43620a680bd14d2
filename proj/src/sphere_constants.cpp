#include "vexlab/sphere_constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "vexlab/quadrature.hpp"
#include "vexlab/rng.hpp"

namespace vexlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void check_domain(int n, double p) {
    if (n < 1) throw std::domain_error("gamma: dimension n must be >= 1");
    if (!(p >= 0.0)) throw std::domain_error("gamma: exponent p must be >= 0");
}

double gamma_closed_form(int n, double p) {
    if (n == 1) return 2.0;
    // 2 pi^{(n-1)/2} Gamma((p+1)/2) / Gamma((n+p)/2)
    const double lg = std::lgamma(0.5 * (p + 1.0)) - std::lgamma(0.5 * (n + p));
    return 2.0 * std::pow(kPi, 0.5 * (n - 1)) * std::exp(lg);
}

std::map<std::pair<int, long long>, double>& memo() {
    static std::map<std::pair<int, long long>, double> m;
    return m;
}

std::mutex& memo_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

double gamma(int n, double p) {
    check_domain(n, p);
    if (n == 1) return 2.0;
    const auto key = std::make_pair(n, std::llround(p * 1e12));
    {
        std::lock_guard<std::mutex> lock(memo_mutex());
        auto it = memo().find(key);
        if (it != memo().end()) return it->second;
    }
    const double v = gamma_closed_form(n, p);
    std::lock_guard<std::mutex> lock(memo_mutex());
    memo().emplace(key, v);
    return v;
}

double k_const(int n, double p) {
    check_domain(n, p);
    if (!(p >= 1.0)) throw std::domain_error("k_const: exponent p must be >= 1");
    return gamma(n, p) / p;
}

double sphere_measure(int n) {
    if (n < 1) throw std::domain_error("sphere_measure: dimension must be >= 1");
    if (n == 1) return 2.0;
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double gamma_latitude_quadrature(int n, double p) {
    check_domain(n, p);
    if (n == 1) return 2.0;
    const double shell = (n == 2) ? 1.0 : sphere_measure(n - 1);
    // n=2: gamma = int_0^{2pi} |cos t|^p dt = 2 int_0^pi |cos t|^p dt
    const double front = (n == 2) ? 2.0 : shell;
    const auto integrand = [n, p](double t) {
        const double c = std::abs(std::cos(t));
        const double s = std::sin(t);
        double v = (p == 0.0) ? 1.0 : std::pow(c, p);
        if (n > 2) v *= std::pow(s, n - 2);
        return v;
    };
    return front * integrate_gk(integrand, 0.0, kPi, 1e-14, 1e-13);
}

McEstimate gamma_mc(int n, double p, std::int64_t samples, std::uint64_t seed) {
    check_domain(n, p);
    if (samples < 1000) throw std::invalid_argument("gamma_mc: need at least 1000 samples");
    if (n == 1) return {2.0, 0.0};
    Rng rng(seed);
    // gamma = H^{n-1}(S^{n-1}) * E[|w.e|^p] with e the first axis
    double mean = 0.0;
    double m2 = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        const auto w = rng.on_sphere(n);
        const double v = std::pow(std::abs(w[0]), p);
        const double d = v - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (v - mean);
    }
    const double measure = sphere_measure(n);
    const double var = m2 / static_cast<double>(samples - 1);
    const double se = measure * std::sqrt(var / static_cast<double>(samples));
    return {measure * mean, se};
}

}  // namespace vexlab
