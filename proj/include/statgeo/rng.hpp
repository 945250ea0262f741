#pragma once

#include <cstdint>
#include <random>

namespace statgeo {

/// splitmix64 mix; used to derive independent per-trial seeds from a master
/// seed so that trial loops are order-independent.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic RNG. The double mapping is spelled out bit-by-bit instead of
/// going through std::uniform_real_distribution, whose output is not pinned
/// by the standard across implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1).
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-1, 1).
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace statgeo
