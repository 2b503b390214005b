#pragma once

// Continuant polynomials q_k(x_1..x_k) and p_k(a0; x_1..x_k), evaluated
// exactly on positive integer arguments, together with the palindromic
// tuples X_{i,j} / Y_{i,j} and the closed forms for the squares of
//
//     [a; X_{1,1}, 2a]  and  [a; Y_{1,1}, 2a]   (both periods repeated).
//
// Index conventions: q_{-1} = 0, q_0 = 1; tuple positions are 1-based.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cfprime/bigint.hpp"

namespace cfprime {

/// A tuple of positive digits (x_1, ..., x_n). The empty tuple is allowed
/// so that q_0 and p_0 have an argument.
class DigitTuple {
public:
    DigitTuple() = default;
    explicit DigitTuple(std::vector<std::uint64_t> entries);
    DigitTuple(std::initializer_list<std::uint64_t> entries);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    /// 1-based, as in x_i.
    std::uint64_t at(std::size_t i) const;
    std::span<const std::uint64_t> view() const { return entries_; }
    const std::vector<std::uint64_t>& entries() const { return entries_; }

    DigitTuple reversed() const;

    friend bool operator==(const DigitTuple&, const DigitTuple&) = default;

private:
    std::vector<std::uint64_t> entries_;
};

/// Exact rational, always in lowest terms with positive denominator.
class ExactRational {
public:
    ExactRational() = default;
    ExactRational(const BigInt& num, const BigInt& den);
    explicit ExactRational(const mpq_class& v);

    BigInt num() const { return value_.get_num(); }
    BigInt den() const { return value_.get_den(); }
    bool is_integer() const { return value_.get_den() == 1; }
    const mpq_class& value() const { return value_; }
    double to_double() const { return value_.get_d(); }

    /// "num/den"
    std::string str() const;

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.value_ - b.value_));
    }

private:
    mpq_class value_{0};
};

BigInt continuant_q(std::span<const std::uint64_t> xs);
inline BigInt continuant_q(const DigitTuple& xs) { return continuant_q(xs.view()); }

/// Numerator p_k of [a0; x_1, ..., x_k].
BigInt continuant_p(const BigInt& a0, std::span<const std::uint64_t> xs);
inline BigInt continuant_p(const BigInt& a0, const DigitTuple& xs) { return continuant_p(a0, xs.view()); }

/// X_{i,j} = (x_i, ..., x_n, x_{n-1}, ..., x_j). Requires 1 <= i <= j <= n.
DigitTuple build_X(const DigitTuple& xs, std::size_t i, std::size_t j);
/// Y_{i,j} = (x_i, ..., x_n, x_n, ..., x_j). Requires 1 <= i <= j <= n.
DigitTuple build_Y(const DigitTuple& xs, std::size_t i, std::size_t j);

/// q_{2n-2}(X_{1,2})^2 - q_{2n-1}(X_{1,1}) q_{2n-3}(X_{2,2}); always 1.
BigInt cassini_even(const DigitTuple& xs);
/// q_{2n-1}(Y_{1,2})^2 - q_{2n}(Y_{1,1}) q_{2n-2}(Y_{2,2}); always -1.
BigInt cassini_odd(const DigitTuple& xs);

BigInt fibonacci(unsigned long k);

/// [a; 1, ..., 1, 2a]^2 with k-1 ones, i.e. (F_k a^2 + 2 F_{k-1} a + F_{k-2}) / F_k. Requires k >= 2.
ExactRational golden_square(const BigInt& a, unsigned long k);

/// [a; X_{1,1}, 2a]^2 in factored form.
ExactRational F_closed(const BigInt& a, const DigitTuple& xs);
/// [a; Y_{1,1}, 2a]^2.
ExactRational G_closed(const BigInt& a, const DigitTuple& xs);

/// Period block (X_{1,1}, 2a) that F_closed claims for sqrt of its value.
std::vector<BigInt> F_claimed_period(const BigInt& a, const DigitTuple& xs);
/// Period block (Y_{1,1}, 2a) that G_closed claims.
std::vector<BigInt> G_claimed_period(const BigInt& a, const DigitTuple& xs);

}  // namespace cfprime
