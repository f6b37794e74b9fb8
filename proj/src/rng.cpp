#include "quenchlab/rng.hpp"

#include <cmath>

namespace quenchlab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

U128 CounterStream::word(std::uint32_t k, std::int64_t i, std::uint32_t replicate,
                         std::uint32_t ext) const {
    std::uint64_t key64 = base_key_;
    if (ext != 0) key64 = mix64(key64 ^ (0xE7037ED1A0B428DBULL + ext));
    const std::uint64_t iu = static_cast<std::uint64_t>(i);
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(iu),
        static_cast<std::uint32_t>(iu >> 32),
        k,
        replicate,
    };
    const std::array<std::uint32_t, 2> key = {
        static_cast<std::uint32_t>(key64),
        static_cast<std::uint32_t>(key64 >> 32),
    };
    const auto out = philox4x32(ctr, key);
    U128 w;
    w.hi = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    w.lo = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    return w;
}

double normal01(U128 w) {
    // u1 in (0,1], u2 in [0,1); log(u1) is finite for all words
    const double u1 = static_cast<double>((w.hi >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(w.lo >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

int three_point_region_fast(std::uint64_t denom, U128 w) {
    using u128 = unsigned __int128;
    const u128 a_hi = static_cast<u128>(w.hi) * denom;   // < 2^127 for denom < 2^63
    const u128 a_lo = static_cast<u128>(w.lo) * denom;
    const std::uint64_t b0 = static_cast<std::uint64_t>(a_lo);
    const std::uint64_t b1 = static_cast<std::uint64_t>(a_lo >> 64);
    const u128 mid = a_hi + b1;                          // no overflow
    const std::uint64_t limb2 = static_cast<std::uint64_t>(mid >> 64);
    const u128 low128 = (static_cast<u128>(static_cast<std::uint64_t>(mid)) << 64) | b0;
    // x*denom = limb2 * 2^128 + low128;  2^128 - denom == 0 - denom (mod 2^128)
    const u128 boundary = static_cast<u128>(0) - denom;
    if (limb2 == 0) return low128 <= boundary ? 1 : 2;
    if (limb2 == 1) return low128 <= boundary ? -1 : 2;
    return 0;
}

}  // namespace quenchlab
