#pragma once

#include <cstdint>
#include <random>

namespace ptasynth {

/// Seeded generator whose draws are identical on every platform: only raw
/// mt19937_64 output is used, never the library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t next() { return g_(); }
    /// Uniform-ish integer in [lo, hi].
    long uniform(long lo, long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }
    /// True with probability num/den.
    bool chance(unsigned num, unsigned den) { return next() % den < num; }
    template <class Vec>
    const auto& pick(const Vec& v) {
        return v[static_cast<std::size_t>(next() % v.size())];
    }

private:
    std::mt19937_64 g_;
};

}  // namespace ptasynth
