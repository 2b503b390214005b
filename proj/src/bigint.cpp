#include "cfprime/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace cfprime {

std::uint64_t isqrt(std::uint64_t n) {
    // Floating estimate, then exact correction in 128-bit.
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    using u128 = unsigned __int128;
    while (static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

BigInt isqrt(const BigInt& n) {
    if (sgn(n) < 0) throw std::domain_error("isqrt of negative integer");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(std::uint64_t n) {
    const auto r = isqrt(n);
    return r * r == n;
}

bool is_perfect_square(const BigInt& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

BigInt parse_big(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty integer");
    for (char c : text) {
        if (c < '0' || c > '9') throw std::invalid_argument("not a non-negative integer: " + text);
    }
    return BigInt(text, 10);
}

}  // namespace cfprime
