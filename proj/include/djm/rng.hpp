#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace djm {

// Counter-based generator (splitmix64). Streams are identical on every
// platform and the full state is a single word, so runs can be snapshotted
// and replayed from the recorded seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 1) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound); bound >= 1
    std::uint64_t below(std::uint64_t bound) {
        // rejection keeps the distribution exact for any bound
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit && limit != 0);
        return x % bound;
    }

    // uniform in [lo, hi], inclusive
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
        return lo + below(hi - lo + 1);
    }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    // exponential with the given mean, rejected above `cap`, shifted to [1, cap]
    std::uint64_t truncated_exponential(double mean, std::uint64_t cap) {
        for (;;) {
            const double x = -mean * std::log(1.0 - unit());
            if (x < static_cast<double>(cap))
                return static_cast<std::uint64_t>(x) + 1;
        }
    }

    // choose k distinct indices from [0, n) without replacement (partial
    // Fisher-Yates); result order is the draw order
    std::vector<std::uint32_t> sample_indices(std::uint32_t n, std::uint32_t k) {
        std::vector<std::uint32_t> pool(n);
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        if (k > n) k = n;
        for (std::uint32_t i = 0; i < k; ++i) {
            const std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

} // namespace djm
