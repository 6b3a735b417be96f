#include "rdaug/hash.hpp"

namespace rdaug {

namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr std::uint8_t kTagInteger = 0x01;
constexpr std::uint8_t kTagString = 0x02;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

void StableHasher::byte(std::uint8_t b) {
    state_ ^= b;
    state_ *= kFnvPrime;
}

StableHasher& StableHasher::add(std::uint64_t value) {
    byte(kTagInteger);
    for (int i = 0; i < 8; ++i) {
        byte(static_cast<std::uint8_t>(value >> (8 * i)));
    }
    return *this;
}

StableHasher& StableHasher::add(std::string_view text) {
    byte(kTagString);
    const auto len = static_cast<std::uint64_t>(text.size());
    for (int i = 0; i < 8; ++i) {
        byte(static_cast<std::uint8_t>(len >> (8 * i)));
    }
    for (char c : text) {
        byte(static_cast<std::uint8_t>(c));
    }
    return *this;
}

std::uint64_t StableHasher::finish() const { return mix64(state_); }

}  // namespace rdaug
