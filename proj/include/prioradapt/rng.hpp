#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based deterministic randomness (Philox4x32-10). Every consumer in
// the library draws by (seed, stream, index) coordinates instead of mutating
// generator state, so results never depend on evaluation order and can be
// reproduced bit-for-bit by any implementation of the same contract:
//
//   block(seed, stream, index) = Philox4x32-10(
//       counter = (lo32(index), hi32(index), lo32(stream), hi32(stream)),
//       key     = (lo32(seed),  hi32(seed)))
//   u64 = out[0] | out[1] << 32
//   u01 = (u64 >> 11) * 2^-53                       (double in [0, 1))
//   uniform index in [0, n) = u64 mod n
//   standard normal = sqrt(-2 ln(1 - u_a)) * cos(2 pi u_b)
//       with u_a from (out[0], out[1]) and u_b from (out[2], out[3])
//
// The exact stream assignments used by resampling and synthetic generation
// are documented in docs/formats.md.

namespace prioradapt::rng {

namespace detail {

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0, std::uint32_t k1) {
    constexpr std::uint64_t M0 = 0xD2511F53;
    constexpr std::uint64_t M1 = 0xCD9E8D57;
    const std::uint64_t p0 = M0 * ctr[0];
    const std::uint64_t p1 = M1 * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

}  // namespace detail

// One 128-bit Philox4x32-10 block keyed by (seed) at counter (index, stream).
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                               std::uint64_t index) {
    constexpr std::uint32_t W0 = 0x9E3779B9;
    constexpr std::uint32_t W1 = 0xBB67AE85;
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    auto k0 = static_cast<std::uint32_t>(seed);
    auto k1 = static_cast<std::uint32_t>(seed >> 32);
    detail::philox_round(ctr, k0, k1);
    for (int r = 1; r < 10; ++r) {
        k0 += W0;
        k1 += W1;
        detail::philox_round(ctr, k0, k1);
    }
    return ctr;
}

inline std::uint64_t u64_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto out = philox4x32(seed, stream, index);
    return static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
}

// Double in [0, 1) from the top 53 bits.
inline double u01_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return static_cast<double>(u64_at(seed, stream, index) >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n).
inline std::size_t index_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                            std::size_t n) {
    return static_cast<std::size_t>(u64_at(seed, stream, index) % n);
}

// One standard normal draw per block (Box-Muller, cosine branch).
inline double normal_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto out = philox4x32(seed, stream, index);
    const std::uint64_t a = static_cast<std::uint64_t>(out[0]) |
                            (static_cast<std::uint64_t>(out[1]) << 32);
    const std::uint64_t b = static_cast<std::uint64_t>(out[2]) |
                            (static_cast<std::uint64_t>(out[3]) << 32);
    const double ua = static_cast<double>(a >> 11) * 0x1.0p-53;
    const double ub = static_cast<double>(b >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log1p(-ua)) * std::cos(2.0 * std::numbers::pi * ub);
}

}  // namespace prioradapt::rng
