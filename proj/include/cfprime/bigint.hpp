#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace cfprime {

using BigInt = mpz_class;

/// Floor square root, exact for every 64-bit input.
std::uint64_t isqrt(std::uint64_t n);
BigInt isqrt(const BigInt& n);

bool is_perfect_square(std::uint64_t n);
bool is_perfect_square(const BigInt& n);

inline BigInt to_big(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

/// Caller must check fits_u64 first.
inline std::uint64_t to_u64(const BigInt& v) {
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, 1, sizeof(r), 0, 0, v.get_mpz_t());
    return r;
}

inline std::string to_string(std::uint64_t v) { return std::to_string(v); }
inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// Parses a non-negative decimal integer; throws std::invalid_argument.
BigInt parse_big(const std::string& text);

}  // namespace cfprime
