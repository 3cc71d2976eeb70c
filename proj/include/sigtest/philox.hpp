#pragma once

#include <array>
#include <cstdint>

namespace sigtest {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Stateless: every call maps (counter, key) to 128 pseudo-random bits, so
/// any trial can be regenerated from its index alone. Passes BigCrush.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            ctr = single_round(ctr, key);
        }
        return ctr;
    }

    static constexpr Key key_from_seed(std::uint64_t seed) {
        return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    }

    /// Two 64-bit words for (stream index, block) under a 64-bit seed.
    static constexpr std::array<std::uint64_t, 2> block(std::uint64_t seed, std::uint64_t index, std::uint64_t block) {
        const Counter out = generate({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                      static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)},
                                     key_from_seed(seed));
        return {static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32),
                static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32)};
    }

    /// Uniform double in [0, 1) with 53 random bits.
    static constexpr double to_unit(std::uint64_t bits) {
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

    static constexpr Counter single_round(const Counter& ctr, const Key& key) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        return {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
};

}  // namespace sigtest
