#pragma once

#include "greedylab/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace greedylab {

// Seeded generator with explicit range reductions, so identical seeds give
// identical streams on every platform (std distributions are not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform on [lo, hi], rejection-sampled
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const auto width = static_cast<std::uint64_t>(hi - lo) + 1;
        if (width == 0) return static_cast<std::int64_t>(next_u64());  // full range
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % width;
        std::uint64_t r;
        do { r = next_u64(); } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % width);
    }

    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_range(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    bool coin() { return (next_u64() & 1) != 0; }

    int sign() { return coin() ? 1 : -1; }

    // uniform on [lo, hi] for big integers
    Index uniform_index(const Index& lo, const Index& hi) {
        if (lo > hi) throw std::invalid_argument("uniform_index: empty range");
        const Index width = hi - lo + 1;
        const std::size_t bits = boost::multiprecision::msb(width) + 1;
        while (true) {
            Index r = 0;
            for (std::size_t got = 0; got < bits; got += 64) {
                r <<= 64;
                r |= next_u64();
            }
            r >>= (64 - bits % 64) % 64;
            if (r < width) return lo + r;
        }
    }

    // sorted sample of `count` distinct values from [lo, hi]
    std::vector<Index> sample_distinct(const Index& lo, const Index& hi, std::size_t count) {
        if (Index(hi - lo + 1) < static_cast<std::int64_t>(count))
            throw std::invalid_argument("sample_distinct: range too small");
        std::vector<Index> out;
        while (out.size() < count) {
            Index v = uniform_index(lo, hi);
            bool dup = false;
            for (const Index& u : out) dup |= (u == v);
            if (!dup) out.push_back(v);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace greedylab
