#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace tcmi {

/// Deterministic 64-bit PRNG (SplitMix64).  Chosen over std::mt19937 because
/// its output is fully specified here, so every sampled dataset and every
/// permutation test is reproducible bit-for-bit across platforms and
/// standard-library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1]; convenient for logs.
    double uniform01_open_low() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via the Marsaglia polar method.  One spare value is
    /// cached, so draws come in deterministic pairs.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double exponential() { return -std::log(uniform01_open_low()); }

    /// Fisher-Yates shuffle; consumes exactly v.size()-1 draws.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_u64() % i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Derives an independent child seed from a root seed and one or two stream
/// indices.  Used to give every generated column / permutation / repeat its
/// own RNG stream, so results do not depend on evaluation order or thread
/// scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 r(seed);
    std::uint64_t s = r.next_u64();
    SplitMix64 ra(s ^ (a + 0x9E3779B97F4A7C15ULL));
    s = ra.next_u64();
    SplitMix64 rb(s ^ (b + 0xD1B54A32D192ED03ULL));
    return rb.next_u64();
}

} // namespace tcmi
