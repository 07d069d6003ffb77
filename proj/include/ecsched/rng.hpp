#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ecsched {

/// Deterministic random source. mt19937_64 has a standard-fixed sequence and
/// all derived draws below avoid std distributions (whose outputs are
/// implementation-defined), so results are reproducible across platforms.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform integer in [0, m); rejection sampling, m >= 1.
    std::uint64_t uniform_index(std::uint64_t m) {
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % m;
        std::uint64_t v = eng_();
        while (v >= limit) v = eng_();
        return v % m;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    bool chance(double p) { return uniform01() < p; }

    /// Zipf-like index in [0, n): P(i) proportional to 1/(i+1)^s.
    std::size_t zipf_index(std::size_t n, double s) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += std::pow(double(i + 1), -s);
        double r = uniform01() * total;
        for (std::size_t i = 0; i < n; ++i) {
            r -= std::pow(double(i + 1), -s);
            if (r <= 0.0) return i;
        }
        return n - 1;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace ecsched
