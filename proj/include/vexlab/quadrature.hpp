#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vexlab {

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
/// Splits the worst interval until the summed error estimate meets
/// abs_tol + rel_tol*|I|. Discontinuities are handled by bisection depth.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 48);

/// Fixed-order Gauss-Legendre nodes/weights on [-1,1] (order in {4,5,6,7,8,12,16}).
std::span<const double> gauss_nodes(int order);
std::span<const double> gauss_weights(int order);

/// Deterministic pairwise (tree) reduction; independent of thread counts as
/// long as the element order is fixed.
double pairwise_sum(std::span<const double> v);

/// Compensated (Kahan-Neumaier) accumulator for long sequential sums.
class Accumulator {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace vexlab
