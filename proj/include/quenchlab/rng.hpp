#pragma once

#include "quenchlab/bigmath.hpp"

#include <array>
#include <cstdint>

namespace quenchlab {

// 128-bit word, big-endian limb order (hi bits are the most significant
// bits of the uniform expansion).
struct U128 {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
};

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3").  Counter-based: the output is a pure function of (counter,
// key), which gives random access to any lattice coordinate without
// generating intermediate state.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// SplitMix64 finalizer: bijective 64-bit mix used to derive stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Domain tags keep draws for distinct purposes on independent streams.
namespace stream_domain {
inline constexpr std::uint64_t lattice = 0x6c61747469636531ULL;
inline constexpr std::uint64_t iid = 0x696964696e6e6f76ULL;
inline constexpr std::uint64_t martingale = 0x6d617274696e6761ULL;
}  // namespace stream_domain

// A keyed family of 128-bit words indexed by (k, i, replicate, ext).
// Words at distinct coordinates are independent; the same coordinate
// always yields the same word.
class CounterStream {
public:
    CounterStream() = default;
    CounterStream(std::uint64_t seed, std::uint64_t domain)
        : base_key_(mix64(seed ^ mix64(domain))) {}

    U128 word(std::uint32_t k, std::int64_t i, std::uint32_t replicate,
              std::uint32_t ext = 0) const;

    std::uint64_t base_key() const { return base_key_; }

private:
    std::uint64_t base_key_ = 0;
};

// Uniform double in (0,1): 53 random bits, offset so 0 is excluded.
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Standard normal via Box-Muller from one 128-bit word.
double normal01(U128 w);

inline int rademacher(U128 w) { return (w.hi >> 63) ? 1 : -1; }

// Exact three-point sampler.  Interprets the word stream as the binary
// expansion of a uniform U in [0,1) and returns
//   +1  if U <  1/denom,
//   -1  if 1/denom <= U < 2/denom,
//    0  otherwise,
// each region decided by exact integer comparison, so the three
// probabilities are the exact rationals 1/denom, 1/denom, 1 - 2/denom.
// words(t) must return the t-th 128-bit word (t = 0, 1, ...).
template <typename WordFn>
int three_point_region(const BigInt& denom, WordFn&& words);

// Single-word fast path used when denom fits comfortably in 64 bits.
// Returns +1/-1/0, or 2 when the first word straddles a region boundary
// and the exact multi-word path must take over.
int three_point_region_fast(std::uint64_t denom, U128 w);

// Exact multi-word path (arbitrary denom); the reference semantics.
template <typename WordFn>
int three_point_region_exact(const BigInt& denom, WordFn&& words) {
    BigInt a = 0;     // a = X_so_far * denom
    BigInt m = 1;     // m = 2^(128 t)
    for (std::uint32_t t = 0;; ++t) {
        const U128 w = words(t);
        BigInt x = BigInt(w.hi);
        x <<= 64;
        x |= w.lo;
        a <<= 128;
        a += x * denom;
        m <<= 128;
        if (a + denom <= m) return 1;
        if (a >= m) {
            if (a >= (m << 1)) return 0;
            if (a + denom <= (m << 1)) return -1;
        }
        // interval [a, a+denom) straddles m or 2m: refine with next word
    }
}

template <typename WordFn>
int three_point_region(const BigInt& denom, WordFn&& words) {
    if (fits_u64(denom) && denom.convert_to<std::uint64_t>() < (1ULL << 63)) {
        const int r = three_point_region_fast(denom.convert_to<std::uint64_t>(), words(0));
        if (r != 2) return r;
    }
    return three_point_region_exact(denom, words);
}

}  // namespace quenchlab
