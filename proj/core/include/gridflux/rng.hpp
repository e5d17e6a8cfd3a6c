#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gridflux {

/// Deterministic random source. Distribution sampling is hand-rolled on top
/// of mt19937_64 because the std:: distribution outputs are
/// implementation-defined and would break cross-toolchain reproducibility.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform double in [0, 1), 53 bits of randomness.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive both ends.
    int uniform_int(int lo, int hi) {
        auto range = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % range);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    /// Derives an independent stream seed (splitmix64 over the pair).
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace gridflux
