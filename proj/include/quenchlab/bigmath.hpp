#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace quenchlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// log2 of a positive integer, accurate to ~1 ulp even when the value
// does not fit in a double.
inline double log2_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log2_big: argument must be positive");
    const auto bits = boost::multiprecision::msb(v) + 1;  // bit length
    if (bits <= 62) return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
    const unsigned shift = bits - 62;
    const auto top = (v >> shift).convert_to<std::uint64_t>();
    return std::log2(static_cast<double>(top)) + static_cast<double>(shift);
}

inline double ln_big(const BigInt& v) { return log2_big(v) * 0.6931471805599453; }

// True when v is exactly representable as a double.
inline bool fits_double_exactly(const BigInt& v) {
    if (v == 0) return true;
    const BigInt a = boost::multiprecision::abs(v);
    return boost::multiprecision::msb(a) + 1 <= 53;
}

// num/den as a double, safe for operands far outside double range.
inline double big_ratio(const BigInt& num, const BigInt& den) {
    if (num == 0) return 0.0;
    if (num < 0) return -big_ratio(-num, den);
    if (fits_double_exactly(num) && fits_double_exactly(den))
        return static_cast<double>(num) / static_cast<double>(den);
    return std::exp2(log2_big(num) - log2_big(den));
}

// sqrt(v) as a double for positive v of any size.  Exact for perfect
// squares that fit in a double (IEEE sqrt is correctly rounded).
inline double sqrt_big(const BigInt& v) {
    if (v < 0) throw std::domain_error("sqrt_big: negative argument");
    if (v == 0) return 0.0;
    if (fits_double_exactly(v)) return std::sqrt(static_cast<double>(v));
    return std::exp2(0.5 * log2_big(v));
}

inline bool fits_u64(const BigInt& v) {
    return v >= 0 && v <= BigInt(UINT64_MAX);
}

inline bool fits_i64(const BigInt& v) {
    return v >= BigInt(INT64_MIN) && v <= BigInt(INT64_MAX);
}

inline BigInt parse_big(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer string");
    return BigInt(s);
}

}  // namespace quenchlab
