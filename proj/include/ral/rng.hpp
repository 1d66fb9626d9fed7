#pragma once

// All randomness in the library flows through this wrapper so that runs are
// reproducible across platforms and standard-library versions. The generator
// is std::mt19937_64 (whose output sequence is fixed by the C++ standard);
// the distributions std::* ships are implementation-defined, so bounded
// integers, unit reals and gaussians are derived here explicitly.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ral/error.hpp"

namespace ral {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    // Independent stream derived from (seed, stream index); used to give
    // sub-tasks (e.g. per-image generation) their own deterministic source.
    static Rng stream(uint64_t seed, uint64_t stream_index) {
        return Rng(splitmix64(seed ^ splitmix64(stream_index)));
    }

    uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, bound) via rejection.
    uint64_t uniform_below(uint64_t bound) {
        if (bound == 0) throw_invalid("uniform_below: bound must be positive");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v % bound;
    }

    // Real in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Marsaglia polar method; one spare value is cached.
    double gaussian() {
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
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // k distinct indices drawn uniformly from [0, n), by partial
    // Fisher-Yates over an index vector. Order of the result is the
    // draw order.
    std::vector<size_t> sample_without_replacement(size_t n, size_t k) {
        if (k > n) throw_invalid("sample_without_replacement: k exceeds population");
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        for (size_t i = 0; i < k; ++i) {
            const size_t j = i + static_cast<size_t>(uniform_below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(k);
        return idx;
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace ral
