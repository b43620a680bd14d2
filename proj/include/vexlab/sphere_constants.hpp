#pragma once

#include <cstdint>
#include <utility>

namespace vexlab {

/// gamma_{n,p} = int_{S^{n-1}} |w.e|^p dH^{n-1}(w). Rotation invariant, so any
/// unit vector e gives the same value. n=1 is the two-point sphere {-1,+1}
/// with counting measure, hence exactly 2 for every p.
/// Values are memoised on (n, p rounded to 12 decimal digits).
double gamma(int n, double p);

/// K_{n,p} = gamma_{n,p} / p.
double k_const(int n, double p);

/// Independent evaluation through the latitude integral
///   gamma_{n,p} = H^{n-2}(S^{n-2}) * int_0^pi |cos t|^p sin^{n-2} t dt
/// by adaptive quadrature. Used as an oracle against the closed form.
double gamma_latitude_quadrature(int n, double p);

/// Surface measure H^{n-1}(S^{n-1}).
double sphere_measure(int n);

struct McEstimate {
    double estimate;
    double std_error;
};

/// Monte Carlo estimate of gamma from uniform sphere samples. Deterministic
/// for a fixed seed. n=1 is degenerate: exactly 2 with zero error.
McEstimate gamma_mc(int n, double p, std::int64_t samples, std::uint64_t seed);

}  // namespace vexlab
