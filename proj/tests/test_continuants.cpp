#include "doctest.h"

#include <random>

#include "cfprime/continuants.hpp"
#include "cfprime/errors.hpp"
#include "cfprime/surd.hpp"

using namespace cfprime;

namespace {

// [x1; x2, ..., xk] evaluated back to front with rationals. Its numerator
// is q_k(x1..xk) and its denominator q_{k-1}(x2..xk).
mpq_class backward(const std::vector<std::uint64_t>& xs) {
    mpq_class r(static_cast<unsigned long>(xs.back()));
    for (std::size_t i = xs.size() - 1; i-- > 0;) r = mpq_class(static_cast<unsigned long>(xs[i])) + 1 / r;
    return r;
}

// Square of [a; b_1..b_{m-1}, 2a, b_1, ...] for a palindromic b, from the
// convergents of [a; b_1..b_{m-1}]: (p^2 - (-1)^m) / q^2.
mpq_class square_via_convergents(const BigInt& a, const std::vector<BigInt>& block) {
    // p, q of [a; block without the final 2a]
    BigInt p_prev = 1, p = a, q_prev = 0, q = 1;
    for (std::size_t i = 0; i + 1 < block.size(); ++i) {
        BigInt pn = block[i] * p + p_prev, qn = block[i] * q + q_prev;
        p_prev = p; p = pn;
        q_prev = q; q = qn;
    }
    const int sign = block.size() % 2 == 0 ? 1 : -1;
    mpq_class r(BigInt(p * p - sign), BigInt(q * q));
    r.canonicalize();
    return r;
}

std::vector<BigInt> bigs(std::initializer_list<long> v) {
    std::vector<BigInt> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

bool expands_to(const BigInt& D, const std::vector<BigInt>& block) {
    const auto e = expand_full_auto(D);
    if (block.size() % e.T() != 0) return false;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (block[i] != e.period[i % e.T()]) return false;
    }
    return true;
}

void for_each_tuple(std::size_t n, std::uint64_t hi, const std::function<void(const std::vector<std::uint64_t>&)>& f,
                    std::uint64_t lo = 1, std::uint64_t stride = 1) {
    std::vector<std::uint64_t> v(n, lo);
    while (true) {
        f(v);
        std::size_t i = 0;
        while (i < n && v[i] + stride > hi) v[i++] = lo;
        if (i == n) return;
        v[i] += stride;
    }
}

}  // namespace

TEST_CASE("DigitTuple") {
    CHECK_THROWS_AS(DigitTuple({1, 0, 2}), DomainError);
    const DigitTuple t{1, 2, 3};
    CHECK(t.at(1) == 1);
    CHECK(t.at(3) == 3);
    CHECK_THROWS_AS(t.at(0), IndexError);
    CHECK_THROWS_AS(t.at(4), IndexError);
    CHECK(t.reversed() == DigitTuple{3, 2, 1});
    CHECK(DigitTuple().empty());
}

TEST_CASE("ExactRational is canonical") {
    const ExactRational r(BigInt(6), BigInt(-4));
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(r.str() == "-3/2");
    CHECK(ExactRational(BigInt(21), BigInt(3)).is_integer());
    CHECK_THROWS(ExactRational(BigInt(1), BigInt(0)));
}

TEST_CASE("continuant_q") {
    CHECK(continuant_q(DigitTuple{1, 1, 1}) == 3);
    CHECK(continuant_q(DigitTuple{1}) == 1);
    CHECK(continuant_q(DigitTuple{3, 6}) == 19);
    CHECK(continuant_q(DigitTuple{}) == 1);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        std::vector<std::uint64_t> xs(1 + rng() % 8);
        for (auto& x : xs) x = 1 + rng() % 10;
        const DigitTuple t(xs);
        REQUIRE(continuant_q(t) == continuant_q(t.reversed()));
        REQUIRE(continuant_q(t) == backward(xs).get_num());
        REQUIRE(continuant_q(t) >= fibonacci(xs.size() + 1));
    }
}

TEST_CASE("continuant_p") {
    CHECK(continuant_p(BigInt(2), DigitTuple{1, 1, 1}) == 8);
    CHECK(continuant_p(BigInt(1), DigitTuple{}) == 1);
    CHECK(continuant_p(BigInt(3), DigitTuple{1, 1, 1, 1}) == 18);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint64_t> xs(1 + rng() % 9);
        for (auto& x : xs) x = 1 + rng() % 20;
        const std::uint64_t a0 = rng() % 50;
        std::vector<std::uint64_t> full{a0};
        full.insert(full.end(), xs.begin(), xs.end());
        const mpq_class v = a0 == 0 ? mpq_class(1 / backward(xs)) : backward(full);
        const DigitTuple t(xs);
        const BigInt p = continuant_p(BigInt(static_cast<unsigned long>(a0)), t);
        const BigInt q = continuant_q(t);
        REQUIRE(mpq_class(p, q) == v);
        // p_{k-1} q_k - p_k q_{k-1} = (-1)^k
        std::vector<std::uint64_t> shorter(xs.begin(), xs.end() - 1);
        const BigInt p1 = continuant_p(BigInt(static_cast<unsigned long>(a0)), DigitTuple(shorter));
        const BigInt q1 = continuant_q(DigitTuple(shorter));
        REQUIRE(BigInt(p1 * q - p * q1) == (xs.size() % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("build_X and build_Y") {
    CHECK(build_X(DigitTuple{4, 9}, 1, 1) == DigitTuple{4, 9, 4});
    CHECK(build_X(DigitTuple{5}, 1, 1) == DigitTuple{5});
    CHECK(build_X(DigitTuple{1, 2, 3}, 2, 2) == DigitTuple{2, 3, 2});
    CHECK(build_X(DigitTuple{1, 2, 3}, 1, 3) == DigitTuple{1, 2, 3});
    CHECK(build_Y(DigitTuple{7}, 1, 1) == DigitTuple{7, 7});
    CHECK(build_Y(DigitTuple{1, 2}, 1, 1) == DigitTuple{1, 2, 2, 1});
    CHECK(build_Y(DigitTuple{1, 2}, 1, 2) == DigitTuple{1, 2, 2});
    CHECK_THROWS_AS(build_X(DigitTuple{1, 2}, 2, 1), IndexError);
    CHECK_THROWS_AS(build_X(DigitTuple{1, 2}, 1, 3), IndexError);
    CHECK_THROWS_AS(build_Y(DigitTuple{1, 2}, 0, 1), IndexError);

    const DigitTuple xs{3, 1, 4, 1};
    for (std::size_t i = 1; i <= 4; ++i) {
        for (std::size_t j = i; j <= 4; ++j) {
            CHECK(build_X(xs, i, j).size() == (4 - i + 1) + (4 - j));
            CHECK(build_Y(xs, i, j).size() == (4 - i + 1) + (4 - j + 1));
        }
    }
}

TEST_CASE("Cassini identities") {
    CHECK(cassini_even(DigitTuple{7}) == 1);
    CHECK(cassini_even(DigitTuple{1, 1}) == 1);
    CHECK(cassini_even(DigitTuple{2, 5, 3}) == 1);
    CHECK(cassini_odd(DigitTuple{1}) == -1);
    CHECK(cassini_odd(DigitTuple{3, 4}) == -1);
    CHECK(cassini_odd(DigitTuple{1, 1, 1}) == -1);

    for (std::size_t n = 1; n <= 4; ++n) {
        for_each_tuple(n, 5, [](const std::vector<std::uint64_t>& v) {
            REQUIRE(cassini_even(DigitTuple(v)) == 1);
            REQUIRE(cassini_odd(DigitTuple(v)) == -1);
        });
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint64_t> v(1 + rng() % 15);
        for (auto& x : v) x = 1 + rng() % 100000;
        REQUIRE(cassini_even(DigitTuple(v)) == 1);
        REQUIRE(cassini_odd(DigitTuple(v)) == -1);
    }
}

TEST_CASE("fibonacci") {
    CHECK(fibonacci(0) == 0);
    CHECK(fibonacci(1) == 1);
    CHECK(fibonacci(10) == 55);
    for (std::size_t k = 0; k <= 30; ++k) {
        REQUIRE(fibonacci(k + 1) == continuant_q(DigitTuple(std::vector<std::uint64_t>(k, 1))));
    }
}

TEST_CASE("parity of continuants over odd entries") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const BigInt f = fibonacci(n + 1) % 2;
        for_each_tuple(n, 9, [&](const std::vector<std::uint64_t>& v) {
            REQUIRE(BigInt(continuant_q(DigitTuple(v)) % 2) == f);
        }, 1, 2);
    }
}

TEST_CASE("golden_square") {
    CHECK(golden_square(BigInt(2), 4) == ExactRational(BigInt(7), BigInt(1)));
    CHECK(golden_square(BigInt(3), 5) == ExactRational(BigInt(13), BigInt(1)));
    CHECK(golden_square(BigInt(1), 2) == ExactRational(BigInt(3), BigInt(1)));
    CHECK_THROWS_AS(golden_square(BigInt(1), 1), DomainError);

    // whenever it is an integer, sqrt of it has period (1,...,1,2a)
    for (unsigned long k = 2; k <= 12; ++k) {
        for (long a = 1; a <= 300; ++a) {
            const auto g = golden_square(BigInt(a), k);
            std::vector<BigInt> block(k - 1, BigInt(1));
            block.emplace_back(2 * a);
            REQUIRE(mpq_class(g.value()) == square_via_convergents(BigInt(a), block));
            if (!g.is_integer()) continue;
            const auto e = expand_full_auto(g.num());
            INFO("a=" << a << " k=" << k);
            REQUIRE(e.a0 == a);
            REQUIRE(e.period == block);
        }
    }
}

TEST_CASE("F_closed") {
    CHECK(F_closed(BigInt(2), DigitTuple{1}) == ExactRational(BigInt(8), BigInt(1)));
    CHECK(expand_full(std::uint64_t{8}).period == std::vector<std::uint64_t>{1, 4});
    CHECK(F_closed(BigInt(2), DigitTuple{1, 1}) == ExactRational(BigInt(7), BigInt(1)));
    CHECK(F_claimed_period(BigInt(2), DigitTuple{1, 1}) == bigs({1, 1, 1, 4}));

    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint64_t> xs(1 + rng() % 6);
        for (auto& x : xs) x = 1 + rng() % 9;
        const BigInt a(static_cast<unsigned long>(1 + rng() % 1000));
        const DigitTuple t(xs);
        const auto f = F_closed(a, t);
        const auto block = F_claimed_period(a, t);
        REQUIRE(mpq_class(f.value()) == square_via_convergents(a, block));
        // (a q_{2n-1} + q_{2n-2})^2 - 1 = F q_{2n-1}^2
        const auto x11 = build_X(t, 1, 1);
        const BigInt q11 = continuant_q(x11);
        const std::vector<std::uint64_t> head(x11.entries().begin(), x11.entries().end() - 1);
        const BigInt q12 = continuant_q(DigitTuple(head));
        REQUIRE(mpq_class(BigInt((a * q11 + q12) * (a * q11 + q12) - 1)) == f.value() * q11 * q11);
    }
}

TEST_CASE("G_closed") {
    CHECK(G_closed(BigInt(1), DigitTuple{1}) == ExactRational(BigInt(5), BigInt(2)));
    CHECK(G_closed(BigInt(3), DigitTuple{3}) == ExactRational(BigInt(109), BigInt(10)));
    for (long a = 1; a <= 100; ++a) {
        const auto g = G_closed(BigInt(a), DigitTuple{1});
        REQUIRE(g == ExactRational(BigInt(2 * a * a + 2 * a + 1), BigInt(2)));
        REQUIRE_FALSE(g.is_integer());
    }
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::uint64_t> xs(1 + rng() % 6);
        for (auto& x : xs) x = 1 + rng() % 9;
        const BigInt a(static_cast<unsigned long>(1 + rng() % 1000));
        const DigitTuple t(xs);
        REQUIRE(mpq_class(G_closed(a, t).value()) == square_via_convergents(a, G_claimed_period(a, t)));
    }
}

TEST_CASE("integral closed forms expand to their claimed blocks") {
    std::mt19937_64 rng(19);
    int hits = 0;
    for (int i = 0; i < 20000 && hits < 300; ++i) {
        std::vector<std::uint64_t> xs(1 + rng() % 4);
        for (auto& x : xs) x = 1 + rng() % 6;
        const DigitTuple t(xs);
        const BigInt a(static_cast<unsigned long>(1 + rng() % 5000));
        for (bool use_f : {true, false}) {
            const auto v = use_f ? F_closed(a, t) : G_closed(a, t);
            if (!v.is_integer()) continue;
            ++hits;
            const auto block = use_f ? F_claimed_period(a, t) : G_claimed_period(a, t);
            REQUIRE(expands_to(v.num(), block));
        }
    }
    CHECK(hits > 50);
}
