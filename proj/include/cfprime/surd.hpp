#pragma once

// Continued-fraction expansion of sqrt(D) by the integer PQa recursion.
//
// A state (P, Q) at index k stands for the complete quotient
// alpha_k = (sqrt(D) + P) / Q. Its partial quotient is floor((a0 + P) / Q),
// and stepping moves to
//
//     P' = a*Q - P,   Q' = (D - P'^2) / Q.
//
// Every operation is templated on the radicand width: std::uint64_t is the
// fast path used by the prime scans, BigInt handles family values past 2^64.
// No floating point is involved anywhere.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cfprime/bigint.hpp"
#include "cfprime/errors.hpp"

namespace cfprime {

inline constexpr std::size_t kDefaultPeriodBudget = 1'000'000;

template <class Int>
struct BasicSurdState {
    Int D;
    Int a0;
    Int P;
    Int Q;
    std::uint64_t index = 0;  // digits emitted after a0

    /// Partial quotient of the complete quotient this state stands for.
    Int digit() const { return Int((a0 + P) / Q); }

    bool same_position(const BasicSurdState& o) const { return P == o.P && Q == o.Q; }
};

template <class Int>
struct BasicStep {
    Int digit;
    BasicSurdState<Int> next;
};

/// a0 plus one full period (a_1, ..., a_T). The last digit is 2*a0.
template <class Int>
struct BasicExpansion {
    Int D;
    Int a0;
    std::vector<Int> period;

    std::size_t T() const { return period.size(); }
};

template <class Int>
struct BasicPrefixExpansion {
    Int D;
    Int a0;
    std::vector<Int> digits;
    bool complete = false;  // the period closed within `digits`
};

using SurdState = BasicSurdState<std::uint64_t>;
using Expansion = BasicExpansion<std::uint64_t>;
using PrefixExpansion = BasicPrefixExpansion<std::uint64_t>;
using BigExpansion = BasicExpansion<BigInt>;
using BigPrefixExpansion = BasicPrefixExpansion<BigInt>;

template <class Int>
BasicSurdState<Int> initial_state(const Int& D) {
    const Int a0 = isqrt(D);
    if (a0 * a0 == D) throw SquareInput("radicand " + to_string(D) + " is a perfect square");
    return BasicSurdState<Int>{D, a0, Int(0), Int(1), 0};
}

/// Advances `s` in place and returns the newly emitted digit a_{index+1}.
template <class Int>
Int advance(BasicSurdState<Int>& s) {
    const Int a = s.digit();
    Int p_next = a * s.Q - s.P;
    if (p_next > s.a0 || p_next < 0) {
        throw InternalInvariantViolation("P out of range at index " + std::to_string(s.index + 1) +
                                         " for D=" + to_string(s.D));
    }
    Int num = s.D - p_next * p_next;
    if (num % s.Q != 0) {
        throw InternalInvariantViolation("inexact division (D - P'^2)/Q for D=" + to_string(s.D));
    }
    Int q_next = num / s.Q;
    if (q_next <= 0 || q_next > 2 * s.a0) {
        throw InternalInvariantViolation("Q out of range at index " + std::to_string(s.index + 1) +
                                         " for D=" + to_string(s.D));
    }
    s.P = std::move(p_next);
    s.Q = std::move(q_next);
    ++s.index;
    return s.digit();
}

template <class Int>
BasicStep<Int> step(const BasicSurdState<Int>& state) {
    BasicStep<Int> r{Int(0), state};
    r.digit = advance(r.next);
    return r;
}

/// Endless digit source a_1, a_2, ...; past one period it simply keeps
/// going, so reads beyond T wrap cyclically.
template <class Int>
class BasicDigitCursor {
public:
    explicit BasicDigitCursor(const Int& D) : state_(initial_state(D)) {}

    Int next() { return advance(state_); }
    const BasicSurdState<Int>& state() const { return state_; }

private:
    BasicSurdState<Int> state_;
};

using DigitCursor = BasicDigitCursor<std::uint64_t>;

namespace detail {

template <class Int>
void check_period_shape(const BasicExpansion<Int>& e) {
    const auto T = e.period.size();
    if (e.period.back() != 2 * e.a0) {
        throw InternalInvariantViolation("period of sqrt(" + to_string(e.D) +
                                         ") does not end in 2*a0");
    }
    for (std::size_t i = 0; i + 1 < T; ++i) {
        if (e.period[i] != e.period[T - 2 - i]) {
            throw InternalInvariantViolation("period of sqrt(" + to_string(e.D) +
                                             ") is not palindromic");
        }
    }
}

}  // namespace detail

/// Full period. Termination is the first return of the state to (P_1, Q_1).
template <class Int>
BasicExpansion<Int> expand_full(const Int& D, std::size_t period_budget = kDefaultPeriodBudget) {
    BasicSurdState<Int> s = initial_state(D);
    BasicExpansion<Int> e{D, s.a0, {}};
    e.period.push_back(advance(s));
    const BasicSurdState<Int> first = s;
    for (;;) {
        Int d = advance(s);
        if (s.same_position(first)) break;
        if (e.period.size() >= period_budget) {
            throw BudgetExceeded("period of sqrt(" + to_string(D) + ") exceeds budget " +
                                 std::to_string(period_budget));
        }
        e.period.push_back(std::move(d));
    }
    detail::check_period_shape(e);
    return e;
}

/// Period length T without storing digits.
template <class Int>
std::size_t period_length(const Int& D, std::size_t period_budget = kDefaultPeriodBudget) {
    BasicSurdState<Int> s = initial_state(D);
    advance(s);
    const BasicSurdState<Int> first = s;
    std::size_t T = 1;
    Int last = first.digit();
    for (;;) {
        Int d = advance(s);
        if (s.same_position(first)) break;
        if (T >= period_budget) {
            throw BudgetExceeded("period of sqrt(" + to_string(D) + ") exceeds budget " +
                                 std::to_string(period_budget));
        }
        ++T;
        last = std::move(d);
    }
    if (last != 2 * first.a0) {
        throw InternalInvariantViolation("period of sqrt(" + to_string(D) + ") does not end in 2*a0");
    }
    return T;
}

/// First min(k, T) digits of the period.
///
/// With `keep_going`, expansion also stops right after the first digit for
/// which the predicate is false; that digit is included as the last entry.
template <class Int>
BasicPrefixExpansion<Int> expand_prefix(const Int& D, std::size_t k,
                                        const std::function<bool(const Int&)>& keep_going = {}) {
    BasicSurdState<Int> s = initial_state(D);
    BasicPrefixExpansion<Int> r{D, s.a0, {}, false};
    if (k == 0) return r;
    r.digits.push_back(advance(s));
    const BasicSurdState<Int> first = s;
    bool stop = keep_going && !keep_going(r.digits.back());
    while (!stop && r.digits.size() < k) {
        Int d = advance(s);
        if (s.same_position(first)) {
            r.complete = true;
            return r;
        }
        r.digits.push_back(std::move(d));
        stop = keep_going && !keep_going(r.digits.back());
    }
    // One look-ahead step tells whether the digits read so far close the period.
    advance(s);
    r.complete = s.same_position(first);
    return r;
}

/// p_{T-1}^2 - D q_{T-1}^2 from the convergents of [a0; a_1, ..., a_{T-1}].
/// Always (-1)^T for a genuine expansion.
template <class Int>
BigInt pell_check(const BasicExpansion<Int>& e) {
    BigInt p_prev = 1, p = BigInt(e.a0);
    BigInt q_prev = 0, q = 1;
    for (std::size_t i = 0; i + 1 < e.period.size(); ++i) {
        const BigInt a(e.period[i]);
        BigInt p_next = a * p + p_prev;
        BigInt q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(p_next);
        q = std::move(q_next);
    }
    return BigInt(p * p - BigInt(e.D) * q * q);
}

/// Expansion of an arbitrary-precision radicand, taking the 64-bit path
/// whenever D fits.
BigExpansion expand_full_auto(const BigInt& D, std::size_t period_budget = kDefaultPeriodBudget);
std::size_t period_length_auto(const BigInt& D, std::size_t period_budget = kDefaultPeriodBudget);

/// Renders "sqrt(D) = [a0; (a_1,...,a_T)], T=n".
template <class Int>
std::string format_expansion(const BasicExpansion<Int>& e) {
    std::string s = "sqrt(" + to_string(e.D) + ") = [" + to_string(e.a0) + "; (";
    for (std::size_t i = 0; i < e.period.size(); ++i) {
        if (i) s += ',';
        s += to_string(e.period[i]);
    }
    s += ")], T=" + std::to_string(e.T());
    return s;
}

}  // namespace cfprime
