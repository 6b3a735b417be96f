#pragma once

#include <cstdint>
#include <cstddef>
#include <random>
#include <string_view>
#include <type_traits>

namespace rdaug {

// Platform-stable 64-bit hash used for every derived seed and for token bucketing.
//
// Each part is fed into an FNV-1a stream as a one-byte type tag followed by
// its payload: integers as 8 little-endian bytes (tag 0x01), strings as an
// 8-byte little-endian length and then the raw bytes (tag 0x02). The final
// FNV state goes through the splitmix64 finalizer. The value is pinned by
// golden tests; changing it changes every augmented corpus and training run.
class StableHasher {
public:
    StableHasher& add(std::uint64_t value);
    StableHasher& add(std::string_view text);
    std::uint64_t finish() const;

private:
    void byte(std::uint8_t b);

    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t mix64(std::uint64_t x);

namespace detail {
template <typename T>
void add_part(StableHasher& h, const T& part) {
    if constexpr (std::is_integral_v<T>) {
        h.add(static_cast<std::uint64_t>(part));
    } else {
        h.add(std::string_view(part));
    }
}
}  // namespace detail

template <typename... Parts>
std::uint64_t stable_hash(const Parts&... parts) {
    StableHasher h;
    (detail::add_part(h, parts), ...);
    return h.finish();
}

// Seeded generator with a documented draw mapping, so replays are exact on any
// platform (the std distributions are implementation-defined).
//   uniform(): top 53 bits of one mt19937_64 output, scaled to [0, 1).
//   below(n):  floor(uniform() * n), clamped to n - 1. Consumes one output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t below(std::size_t n) {
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace rdaug
