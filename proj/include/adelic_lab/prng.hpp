#pragma once

#include <cstdint>

namespace adelic_lab {

/// splitmix64 stream; fixed algorithm so identical seeds give identical
/// suites on every platform and thread count.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n), n > 0.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    std::int64_t range(std::int64_t lo, std::int64_t hi) { // inclusive
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    /// Independent child stream, for per-item generators under parallelism.
    Prng fork(std::uint64_t salt) { return Prng(next() ^ (salt * 0xd1342543de82ef95ULL)); }

private:
    std::uint64_t state_;
};

} // namespace adelic_lab
