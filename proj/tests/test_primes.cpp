#include "doctest.h"

#include <random>

#include "cfprime/bigint.hpp"
#include "cfprime/errors.hpp"
#include "cfprime/primes.hpp"

using namespace cfprime;

namespace {

bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("is_prime") {
    CHECK(is_prime(2));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(709669249));
    CHECK(is_prime(10345006913ull));
    CHECK(is_prime(18446744073709551557ull));  // largest prime below 2^64
    CHECK_FALSE(is_prime(18446744073709551615ull));
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime(3215031751ull));
    CHECK_FALSE(is_prime(3825123056546413051ull));
    CHECK_FALSE(is_prime(341550071728321ull));

    for (std::uint64_t n = 0; n < 200000; ++n) REQUIRE(is_prime(n) == trial_division(n));

    // agree with GMP on large random inputs
    std::mt19937_64 rng(23);
    for (int i = 0; i < 20000; ++i) {
        const std::uint64_t n = rng() | 1;
        const BigInt b = to_big(n);
        REQUIRE(is_prime(n) == (mpz_probab_prime_p(b.get_mpz_t(), 40) != 0));
    }
}

TEST_CASE("primes_stream") {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> got;
    primes_stream({1, 5}, [&](std::uint64_t m, std::uint64_t p) { got.emplace_back(m, p); });
    CHECK(got == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}, {2, 3}, {3, 5}, {4, 7}, {5, 11}});

    CHECK(nth_prime(25) == 97);
    CHECK(nth_prime(4) == 7);
    CHECK(nth_prime(2) == 3);
    CHECK(nth_prime(100000) == 1299709);
    CHECK(nth_prime(78498) == 999983);
    CHECK(nth_prime(78499) == 1000003);

    const auto tail = primes_in_range({99999, 3});
    CHECK(tail == std::vector<std::uint64_t>{1299689, 1299709, 1299721});
}

TEST_CASE("sieve agrees with is_prime up to 10^6") {
    SieveConfig small;
    small.segment_bytes = 4096;  // force many segments
    const auto ps = primes_in_range({1, 78499}, small);
    std::size_t j = 0;
    for (std::uint64_t n = 1; n <= 1000000; ++n) {
        if (is_prime(n)) {
            REQUIRE(j < ps.size());
            REQUIRE(ps[j] == n);
            ++j;
        }
    }
    CHECK(j == 78498);
    CHECK(ps.back() > 1000000);
}

TEST_CASE("PrimeStream batches and seek") {
    PrimeStream s;
    std::vector<std::uint64_t> batch;
    std::uint64_t expected_index = 1, last = 0;
    std::vector<std::uint64_t> all;
    for (int i = 0; i < 50; ++i) {
        const auto first = s.next_batch(997, batch);
        REQUIRE(first == expected_index);
        REQUIRE(batch.size() == 997);
        for (auto p : batch) {
            REQUIRE(p > last);
            last = p;
        }
        all.insert(all.end(), batch.begin(), batch.end());
        expected_index += batch.size();
    }
    PrimeStream t;
    t.seek(12345);
    t.next_batch(10, batch);
    CHECK(batch.front() == all[12344]);
    CHECK(t.next_index() == 12355);
}

TEST_CASE("memory cap") {
    SieveConfig tiny;
    tiny.segment_bytes = 1 << 20;
    tiny.memory_limit_bytes = 1 << 10;
    CHECK_THROWS_AS(nth_prime(1000, tiny), BudgetExceeded);
}
