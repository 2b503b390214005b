#include "doctest.h"

#include <random>
#include <vector>

#include "cfprime/surd.hpp"

using namespace cfprime;

namespace {

// Independent oracle: the continued fraction of sqrt(D) agrees with that of
// both rational bounds floor(sqrt(D)*10^N)/10^N and (that + 1)/10^N for as
// long as the two Euclid expansions agree.
std::vector<BigInt> digits_by_bracketing(std::uint64_t D, int decimal_places) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(decimal_places));
    const BigInt lo_num = isqrt(BigInt(BigInt(D) * scale * scale));
    BigInt n1 = lo_num, d1 = scale, n2 = lo_num + 1, d2 = scale;
    std::vector<BigInt> out;
    while (d1 != 0 && d2 != 0) {
        const BigInt q1 = n1 / d1, q2 = n2 / d2;
        if (q1 != q2) break;
        out.push_back(q1);
        BigInt r1 = n1 - q1 * d1, r2 = n2 - q2 * d2;
        n1 = d1; d1 = r1;
        n2 = d2; d2 = r2;
    }
    return out;  // a0, a1, a2, ...
}

}  // namespace

TEST_CASE("isqrt") {
    CHECK(isqrt(std::uint64_t{0}) == 0);
    CHECK(isqrt(std::uint64_t{425}) == 20);
    CHECK(isqrt(std::uint64_t{17}) == 4);
    CHECK(isqrt(std::uint64_t{0xffffffffffffffffull}) == 0xffffffffull);
    CHECK(isqrt(std::uint64_t{0xfffffffe00000001ull}) == 0xffffffffull);
    CHECK(isqrt(std::uint64_t{0xfffffffe00000000ull}) == 0xfffffffeull);
    CHECK(isqrt(BigInt("1000000000000000000000000000000000000000")) == BigInt("31622776601683793319"));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t n = rng() >> (rng() % 64);
        const auto r = isqrt(n);
        using u128 = unsigned __int128;
        REQUIRE(static_cast<u128>(r) * r <= n);
        REQUIRE(static_cast<u128>(r + 1) * (r + 1) > n);
    }
}

TEST_CASE("step emits a_1 first") {
    auto s3 = initial_state(std::uint64_t{3});
    CHECK(s3.a0 == 1);
    CHECK(step(s3).digit == 1);

    auto s11 = initial_state(std::uint64_t{11});
    CHECK(s11.a0 == 3);
    CHECK(step(s11).digit == 3);

    // D = 159: Q runs 15, 10, 11 and the digits are 1, 1, 1.
    auto s = initial_state(std::uint64_t{159});
    std::vector<std::uint64_t> qs, ds;
    for (int i = 0; i < 3; ++i) {
        auto r = step(s);
        ds.push_back(r.digit);
        qs.push_back(r.next.Q);
        s = r.next;
    }
    CHECK(ds == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(qs == std::vector<std::uint64_t>{15, 10, 11});
}

TEST_CASE("step rejects corrupted states") {
    // not reachable from sqrt(7): Q = 4 does not divide 7 - 1^2
    const SurdState bad{std::uint64_t{7}, 2, 1, 4, 1};
    CHECK_THROWS_AS(step(bad), InternalInvariantViolation);
}

TEST_CASE("expand_full") {
    auto e7 = expand_full(std::uint64_t{7});
    CHECK(e7.a0 == 2);
    CHECK(e7.period == std::vector<std::uint64_t>{1, 1, 1, 4});
    CHECK(e7.T() == 4);

    CHECK(expand_full(std::uint64_t{13}).period == std::vector<std::uint64_t>{1, 1, 1, 1, 6});
    auto e425 = expand_full(std::uint64_t{425});
    CHECK(e425.a0 == 20);
    CHECK(e425.period == std::vector<std::uint64_t>{1, 1, 1, 1, 1, 1, 40});
    auto e89 = expand_full(std::uint64_t{89});
    CHECK(e89.a0 == 9);
    CHECK(e89.period == std::vector<std::uint64_t>{2, 3, 3, 2, 18});

    CHECK(format_expansion(e7) == "sqrt(7) = [2; (1,1,1,4)], T=4");

    CHECK_THROWS_AS(expand_full(std::uint64_t{49}), SquareInput);
    CHECK_THROWS_AS(expand_full(std::uint64_t{4987}, 10), BudgetExceeded);
}

TEST_CASE("expand_prefix") {
    auto p31 = expand_prefix(std::uint64_t{31}, 3);
    CHECK(p31.digits == std::vector<std::uint64_t>{1, 1, 3});
    CHECK_FALSE(p31.complete);

    auto p3 = expand_prefix(std::uint64_t{3}, 5);
    CHECK(p3.digits == std::vector<std::uint64_t>{1, 2});
    CHECK(p3.complete);

    auto p2 = expand_prefix(std::uint64_t{2}, 1);
    CHECK(p2.digits == std::vector<std::uint64_t>{2});
    CHECK(p2.complete);

    // early exit on the first digit other than 1, which is kept
    std::function<bool(const std::uint64_t&)> is_one = [](const std::uint64_t& d) { return d == 1; };
    auto p = expand_prefix(std::uint64_t{31}, 20, is_one);
    CHECK(p.digits == std::vector<std::uint64_t>{1, 1, 3});

    CHECK_THROWS_AS(expand_prefix(std::uint64_t{16}, 3), SquareInput);
}

TEST_CASE("period_length") {
    CHECK(period_length(std::uint64_t{7}) == 4);
    CHECK(period_length(std::uint64_t{4987}) == 66);
    CHECK(period_length(std::uint64_t{1301}) == 7);
    CHECK_THROWS_AS(period_length(std::uint64_t{4987}, 65), BudgetExceeded);
}

TEST_CASE("pell_check") {
    CHECK(pell_check(expand_full(std::uint64_t{7})) == 1);
    CHECK(pell_check(expand_full(std::uint64_t{3})) == 1);
    CHECK(pell_check(expand_full(std::uint64_t{13})) == -1);
    CHECK(pell_check(expand_full(std::uint64_t{2})) == -1);
}

TEST_CASE("expansions agree with the bracketing oracle") {
    for (std::uint64_t D = 2; D <= 3000; ++D) {
        if (is_perfect_square(D)) continue;
        const auto e = expand_full(D);
        const auto ref = digits_by_bracketing(D, 400);
        const std::size_t n = std::min<std::size_t>(ref.size() - 1, 2 * e.T() + 1);
        REQUIRE(ref.size() > 2);
        REQUIRE(ref[0] == e.a0);
        for (std::size_t i = 1; i <= n; ++i) {
            INFO("D=" << D << " i=" << i);
            REQUIRE(ref[i] == e.period[(i - 1) % e.T()]);
        }
    }
}

TEST_CASE("prefix is a prefix of the full period") {
    for (std::uint64_t D = 2; D <= 10000; ++D) {
        if (is_perfect_square(D)) continue;
        const auto e = expand_full(D);
        for (std::size_t k = 1; k <= 25; ++k) {
            const auto p = expand_prefix(D, k);
            const std::size_t n = std::min(k, e.T());
            REQUIRE(p.digits.size() == n);
            REQUIRE(std::equal(p.digits.begin(), p.digits.end(), e.period.begin()));
            REQUIRE(p.complete == (k >= e.T()));
        }
    }
}

TEST_CASE("reachable states stay in range") {
    for (std::uint64_t D = 2; D <= 5000; ++D) {
        if (is_perfect_square(D)) continue;
        DigitCursor cur(D);
        const auto T = period_length(D);
        for (std::size_t i = 0; i < 2 * T; ++i) {
            cur.next();
            const auto& s = cur.state();
            REQUIRE(s.P > 0);
            REQUIRE(s.P <= s.a0);
            REQUIRE(s.Q > 0);
            REQUIRE(s.Q <= 2 * s.a0);
            REQUIRE((D - s.P * s.P) % s.Q == 0);
        }
    }
}

TEST_CASE("64-bit and arbitrary-precision paths agree") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t D = 2 + rng() % 100000000ull;
        if (is_perfect_square(D)) continue;
        const auto small = expand_full(D);
        const auto big = expand_full(to_big(D));
        REQUIRE(small.T() == big.T());
        for (std::size_t j = 0; j < small.T(); ++j) REQUIRE(to_big(small.period[j]) == big.period[j]);
    }
    // past 2^64: (2^40 + 3)^2 + 1 has period (2 a0).
    const BigInt a = to_big(1099511627779ull);
    const auto e = expand_full_auto(BigInt(a * a + 1));
    CHECK(e.T() == 1);
    CHECK(e.period[0] == 2 * a);
    CHECK(pell_check(e) == -1);
}

TEST_CASE("expansion is deterministic") {
    const auto a = expand_full(std::uint64_t{709669249});
    const auto b = expand_full(std::uint64_t{709669249});
    CHECK(a.period == b.period);
    CHECK(a.T() == 58721);
}
