// Seedable, splittable PRNG used by every stochastic component.
//
// The generator is PCG32 (O'Neill): 64-bit LCG state with an xorshift/rotate
// output permutation. Distinct stream selectors give statistically
// independent sequences, which is what split() hands out. The same
// (seed, stream) pair always reproduces the same draw sequence.

#pragma once

#include <cstdint>

namespace qlogic {

namespace detail {

// Stateless 64-bit mixer (MurmurHash3 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdull;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ull;
    z ^= z >> 33;
    return z;
}

} // namespace detail

class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), state_(0), inc_((stream << 1u) | 1u) {
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        const auto xorshifted =
            static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform in [0, 1), 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform integer in [0, bound), bound >= 1.
    std::uint32_t uniform_below(std::uint32_t bound) {
        const std::uint32_t threshold = (0u - bound) % bound;
        for (;;) {
            const std::uint32_t r = next_u32();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bool() { return (next_u32() >> 31) != 0; }

    // Independent child stream. Children of the same parent with distinct
    // ids never share a (seed, stream) pair, so their sequences are
    // independent PCG32 streams.
    RandomSource split(std::uint64_t id) const {
        const std::uint64_t child_seed =
            detail::mix64(seed_ ^ detail::mix64(id ^ 0xd1342543de82ef95ull));
        const std::uint64_t child_stream =
            detail::mix64(stream_ + 0x2545f4914f6cdd1dull) ^ detail::mix64(~id);
        return RandomSource(child_seed, child_stream);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
    std::uint64_t inc_;
};

} // namespace qlogic
