#pragma once

#include <cstdint>
#include <random>

namespace ffp {

/// Deterministic sample stream. All sampling in the library goes through
/// this wrapper (mt19937_64 plus a fixed bit-to-double conversion) so that
/// identical seeds produce identical samples on every platform, independent
/// of the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform in [-r, r).
    double symmetric(double r) { return range(-r, r); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

private:
    std::mt19937_64 eng_;
};

}  // namespace ffp
