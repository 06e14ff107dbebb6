#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace ubnet {

// SplitMix64 (Steele/Lea/Flood). Chosen over std::mt19937 because the
// output sequence is fixed by the algorithm, not by the standard library
// implementation, and independent streams can be derived by hashing a
// master seed with task coordinates. The algorithm name is recorded in
// experiment report provenance.
class SplitMix64 {
public:
    static constexpr const char* algorithm_name = "splitmix64";

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound). Rejection sampling on the top bits keeps the
    // result exactly uniform and identical on every platform.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Integer in [lo, hi] inclusive.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from a master seed and up to three
// task coordinates (e.g. threshold index, replicate index, purpose tag).
// Each coordinate is absorbed through one SplitMix64 scramble so streams
// for neighbouring coordinates share no obvious structure.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    auto mix = [](std::uint64_t x) {
        SplitMix64 g(x);
        return g.next_u64();
    };
    std::uint64_t s = mix(master);
    s = mix(s ^ (a + 0x9e3779b97f4a7c15ULL));
    s = mix(s ^ (b + 0xd1b54a32d192ed03ULL));
    s = mix(s ^ (c + 0x8cb92ba72f3d8dd7ULL));
    return s;
}

// In-place Fisher-Yates shuffle driven by the supplied generator.
template <typename T>
void shuffle(std::vector<T>& values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

// First k entries of a random permutation of {0, ..., n-1}; used for
// sampling k items without replacement.
inline std::vector<std::uint32_t> sample_without_replacement(
    std::uint32_t n, std::uint32_t k, SplitMix64& rng) {
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::uint32_t i = 0; i < k && i + 1 < n; ++i) {
        std::uint32_t j =
            i + static_cast<std::uint32_t>(rng.next_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace ubnet
