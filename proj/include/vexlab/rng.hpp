#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace vexlab {

/// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
/// reproducible across standard libraries and platforms; std::*_distribution
/// is implementation-defined and would break byte-identical reruns.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& w : state_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t s = z;
            s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
            s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
            w = s ^ (s >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0,1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (deterministic, no cached spare state
    /// surprises: both values derive from one call pair).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform point on S^{n-1} embedded in R^3 (n in {1,2,3}).
    std::array<double, 3> on_sphere(int n) {
        std::array<double, 3> w{0.0, 0.0, 0.0};
        if (n == 1) {
            w[0] = (next_u64() & 1u) ? 1.0 : -1.0;
            return w;
        }
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (int i = 0; i < n; ++i) {
                w[i] = gaussian();
                norm2 += w[i] * w[i];
            }
        } while (norm2 == 0.0);
        const double inv = 1.0 / std::sqrt(norm2);
        for (int i = 0; i < n; ++i) w[i] *= inv;
        return w;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace vexlab
