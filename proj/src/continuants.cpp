#include "cfprime/continuants.hpp"

#include <algorithm>
#include <stdexcept>

#include "cfprime/errors.hpp"

namespace cfprime {

DigitTuple::DigitTuple(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {
    for (auto x : entries_) {
        if (x == 0) throw DomainError("digit tuple entries must be positive");
    }
}

DigitTuple::DigitTuple(std::initializer_list<std::uint64_t> entries)
    : DigitTuple(std::vector<std::uint64_t>(entries)) {}

std::uint64_t DigitTuple::at(std::size_t i) const {
    if (i == 0 || i > entries_.size()) throw IndexError("digit index out of range");
    return entries_[i - 1];
}

DigitTuple DigitTuple::reversed() const {
    return DigitTuple(std::vector<std::uint64_t>(entries_.rbegin(), entries_.rend()));
}

ExactRational::ExactRational(const BigInt& num, const BigInt& den) : value_(num, den) {
    if (den == 0) throw DomainError("zero denominator");
    value_.canonicalize();
}

ExactRational::ExactRational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

std::string ExactRational::str() const { return num().get_str() + "/" + den().get_str(); }

BigInt continuant_q(std::span<const std::uint64_t> xs) {
    BigInt prev = 0, cur = 1;
    for (auto x : xs) {
        BigInt next = cur * x + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

BigInt continuant_p(const BigInt& a0, std::span<const std::uint64_t> xs) {
    BigInt prev = 1, cur = a0;
    for (auto x : xs) {
        BigInt next = cur * x + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

void check_indices(const DigitTuple& xs, std::size_t i, std::size_t j) {
    if (i < 1 || i > j || j > xs.size()) {
        throw IndexError("need 1 <= i <= j <= n, got i=" + std::to_string(i) + ", j=" +
                         std::to_string(j) + ", n=" + std::to_string(xs.size()));
    }
}

// q over xs[first, last) where last == first - 1 encodes q_{-1} = 0.
BigInt q_slice(const std::vector<std::uint64_t>& xs, std::ptrdiff_t first, std::ptrdiff_t last) {
    if (last == first - 1) return 0;
    if (last < first) throw InternalInvariantViolation("bad continuant slice");
    return continuant_q(std::span<const std::uint64_t>(xs.data() + first, static_cast<std::size_t>(last - first)));
}

}  // namespace

DigitTuple build_X(const DigitTuple& xs, std::size_t i, std::size_t j) {
    check_indices(xs, i, j);
    const auto& e = xs.entries();
    const std::size_t n = e.size();
    std::vector<std::uint64_t> out(e.begin() + static_cast<std::ptrdiff_t>(i - 1), e.end());
    for (std::size_t k = n - 1; k >= j && k >= 1; --k) out.push_back(e[k - 1]);
    return DigitTuple(std::move(out));
}

DigitTuple build_Y(const DigitTuple& xs, std::size_t i, std::size_t j) {
    check_indices(xs, i, j);
    const auto& e = xs.entries();
    const std::size_t n = e.size();
    std::vector<std::uint64_t> out(e.begin() + static_cast<std::ptrdiff_t>(i - 1), e.end());
    for (std::size_t k = n; k >= j && k >= 1; --k) out.push_back(e[k - 1]);
    return DigitTuple(std::move(out));
}

// X_{1,2} and X_{2,2} are X_{1,1} with the last (resp. first and last)
// entry dropped; for n = 1 that yields the empty tuple and q_{-1}.

BigInt cassini_even(const DigitTuple& xs) {
    if (xs.empty()) throw DomainError("cassini_even needs n >= 1");
    const auto x11 = build_X(xs, 1, 1).entries();
    const auto len = static_cast<std::ptrdiff_t>(x11.size());
    const BigInt q12 = q_slice(x11, 0, len - 1);
    const BigInt q11 = q_slice(x11, 0, len);
    const BigInt q22 = q_slice(x11, 1, len - 1);
    return BigInt(q12 * q12 - q11 * q22);
}

BigInt cassini_odd(const DigitTuple& xs) {
    if (xs.empty()) throw DomainError("cassini_odd needs n >= 1");
    const auto y11 = build_Y(xs, 1, 1).entries();
    const auto len = static_cast<std::ptrdiff_t>(y11.size());
    const BigInt q12 = q_slice(y11, 0, len - 1);
    const BigInt q11 = q_slice(y11, 0, len);
    const BigInt q22 = q_slice(y11, 1, len - 1);
    return BigInt(q12 * q12 - q11 * q22);
}

BigInt fibonacci(unsigned long k) {
    BigInt r;
    mpz_fib_ui(r.get_mpz_t(), k);
    return r;
}

ExactRational golden_square(const BigInt& a, unsigned long k) {
    if (k < 2) throw DomainError("golden_square needs k >= 2");
    const BigInt fk = fibonacci(k), fk1 = fibonacci(k - 1), fk2 = fibonacci(k - 2);
    return ExactRational(BigInt(fk * a * a + 2 * fk1 * a + fk2), fk);
}

ExactRational F_closed(const BigInt& a, const DigitTuple& xs) {
    if (xs.empty()) throw DomainError("F_closed needs n >= 1");
    const auto x11 = build_X(xs, 1, 1).entries();
    const auto len = static_cast<std::ptrdiff_t>(x11.size());
    const BigInt q11 = q_slice(x11, 0, len);
    const BigInt q12 = q_slice(x11, 0, len - 1);
    const mpq_class left = mpq_class(a) + mpq_class(q12 + 1, q11);
    const mpq_class right = mpq_class(a) + mpq_class(q12 - 1, q11);
    return ExactRational(mpq_class(left * right));
}

ExactRational G_closed(const BigInt& a, const DigitTuple& xs) {
    if (xs.empty()) throw DomainError("G_closed needs n >= 1");
    const auto y11 = build_Y(xs, 1, 1).entries();
    const auto len = static_cast<std::ptrdiff_t>(y11.size());
    const BigInt q11 = q_slice(y11, 0, len);
    const BigInt q12 = q_slice(y11, 0, len - 1);
    const mpq_class shift = mpq_class(a) + mpq_class(q12, q11);
    return ExactRational(mpq_class(shift * shift + mpq_class(1, BigInt(q11 * q11))));
}

namespace {

std::vector<BigInt> with_tail(const DigitTuple& body, const BigInt& a) {
    std::vector<BigInt> out;
    out.reserve(body.size() + 1);
    for (auto x : body.entries()) out.emplace_back(x);
    out.emplace_back(2 * a);
    return out;
}

}  // namespace

std::vector<BigInt> F_claimed_period(const BigInt& a, const DigitTuple& xs) {
    return with_tail(build_X(xs, 1, 1), a);
}

std::vector<BigInt> G_claimed_period(const BigInt& a, const DigitTuple& xs) {
    return with_tail(build_Y(xs, 1, 1), a);
}

}  // namespace cfprime
