#pragma once

#include <array>
#include <cstdint>

namespace hcpack {

/// Philox4x32-10 counter-based generator (Salmon et al.): a keyed bijection
/// of 128-bit counters, so every draw is addressable without state.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter apply(Counter ctr, Key key) {
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            ctr = round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53u;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kW0 = 0x9E3779B9u;
    static constexpr std::uint32_t kW1 = 0xBB67AE85u;

    static constexpr Counter round(Counter c, Key k) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Stream tags occupying the pass word of the counter. Pass indices of the
/// engine are small integers, so tags sit at the top of the range.
enum class Stream : std::uint32_t {
    Bernoulli = 0xFFFF0001u,
};

/// Uniform double in [0,1) keyed by (seed, site, pass, cycle), 53-bit resolution.
constexpr double keyed_uniform(std::uint64_t seed, std::uint32_t site, std::uint32_t pass, std::uint64_t cycle) {
    const Philox4x32::Counter ctr{site, pass, static_cast<std::uint32_t>(cycle),
                                  static_cast<std::uint32_t>(cycle >> 32)};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const auto out = Philox4x32::apply(ctr, key);
    const std::uint64_t bits = ((static_cast<std::uint64_t>(out[0]) << 32) | out[1]) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

constexpr double keyed_uniform(std::uint64_t seed, std::uint32_t site, Stream stream, std::uint64_t cycle) {
    return keyed_uniform(seed, site, static_cast<std::uint32_t>(stream), cycle);
}

}  // namespace hcpack
