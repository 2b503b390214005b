#pragma once

// Scans over the first N primes: leading runs of ones, periods without a
// digit 1, counts of ones per period, period growth, digit frequencies and
// prime values of the radicand families. Work is split into contiguous
// slices of each prime batch and merged in index order, so every result is
// independent of the worker count.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfprime/continuants.hpp"
#include "cfprime/families.hpp"
#include "cfprime/primes.hpp"
#include "cfprime/surd.hpp"

namespace cfprime {

struct ScanOptions {
    unsigned workers = 1;
    std::size_t period_budget = kDefaultPeriodBudget;
    std::size_t prefix_len = 20;  // phase-1 filter length for the no-ones scan
    std::size_t batch_size = std::size_t{1} << 18;
    SieveConfig sieve = SieveConfig::from_environment();
};

/// A leading pattern (a_1, ..., a_k) of positive digits.
using Pattern = DigitTuple;

// ---- leading runs of ones ---------------------------------------------------

struct AkRow {
    unsigned k = 0;
    std::optional<std::uint64_t> smallest_prime;
    std::optional<std::size_t> period_of_smallest;
    std::uint64_t count = 0;
};

struct AkScan {
    std::vector<AkRow> rows;                 // k = 1..kmax
    std::uint64_t primes_scanned = 0;
    std::uint64_t first_digit_not_one = 0;   // the k = 0 class
    std::uint64_t run_longer_than_kmax = 0;  // at least kmax+1 leading ones
};

/// Primes among p_1..p_prime_count whose period starts with exactly k ones.
AkScan scan_Ak(unsigned kmax, std::uint64_t prime_count, const ScanOptions& opts = {});

// ---- periods without a digit 1 ----------------------------------------------

struct L0Row {
    std::size_t i = 0;  // period length
    std::uint64_t count = 0;
    std::optional<std::uint64_t> smallest;
};

struct L0Scan {
    std::vector<L0Row> rows;  // increasing i, only lengths that occur
    std::uint64_t primes_scanned = 0;
    std::uint64_t phase1_survivors = 0;  // no 1 among the first prefix_len digits
    std::uint64_t members = 0;
};

L0Scan scan_L0(std::uint64_t prime_count, const ScanOptions& opts = {});

// ---- number of ones per period ----------------------------------------------

struct L1Row {
    std::uint64_t i = 0;  // ones in the period
    std::uint64_t count = 0;
    std::optional<std::uint64_t> smallest;
};

struct RatioSample {
    std::uint64_t m = 0;
    std::uint64_t ones = 0;
    std::size_t T = 0;
};

struct L1Scan {
    std::vector<L1Row> rows;  // increasing i
    std::uint64_t primes_scanned = 0;
    std::size_t buckets = 0;
    /// covered[b] is true when some ratio ones/T lies in [b/buckets, (b+1)/buckets).
    std::vector<bool> covered;
    std::vector<RatioSample> samples;  // filled only when requested

    double covered_fraction() const;
};

L1Scan scan_L1(std::uint64_t prime_count, std::size_t buckets = 100, bool keep_samples = false,
               const ScanOptions& opts = {});

// ---- period lengths ---------------------------------------------------------

struct PeriodStats {
    std::uint64_t m = 0;
    std::uint64_t p = 0;
    std::size_t T = 0;
    /// T / (sqrt(m) log m), natural log; +inf at m = 1.
    double ratio = 0;
};

/// sqrt(m) * ln(m).
double period_bound(std::uint64_t m);

struct PeriodScan {
    std::vector<PeriodStats> series;             // empty unless requested
    std::map<std::size_t, std::uint64_t> W;      // T -> number of primes
    std::vector<std::uint64_t> exceedances;      // m >= 2 with T > sqrt(m) ln m
    std::uint64_t primes_scanned = 0;
    std::size_t max_T = 0;
};

PeriodScan scan_periods(std::uint64_t prime_count, bool keep_series = true, const ScanOptions& opts = {});

// ---- densities --------------------------------------------------------------

/// Density of primes whose period starts with `pattern`:
/// 1 / ((q_k + q_{k-1}) q_k).
ExactRational density_predict(const Pattern& pattern);

/// 1 / (F_{k+3} F_{k+1}).
ExactRational density_Ak(unsigned k);

struct PatternCount {
    Pattern pattern;
    std::uint64_t count = 0;
};

/// How many of p_1..p_prime_count have a period starting with each pattern
/// (digits past T wrap around the period).
std::vector<PatternCount> pattern_census(const std::vector<Pattern>& patterns, std::uint64_t prime_count,
                                         const ScanOptions& opts = {});

struct FreqRow {
    std::size_t position = 0;
    std::uint64_t digit = 0;  // max_digit + 1 stands for the pooled overflow bucket
    bool overflow = false;
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    double gauss_kuzmin = 0;

    ExactRational empirical() const { return ExactRational(BigInt(count), BigInt(total)); }
};

/// log2(1 + 1/(k(k+2))).
double gauss_kuzmin(std::uint64_t k);

std::vector<FreqRow> digit_frequency(std::size_t position, std::uint64_t prime_count, std::uint64_t max_digit,
                                     const ScanOptions& opts = {});

// ---- family censuses --------------------------------------------------------

struct FamilyCensus {
    FamilyId family{};
    std::int64_t param_bound = 0;
    std::uint64_t points = 0;
    std::uint64_t prime_points = 0;
    std::uint64_t untested_points = 0;  // values past 2^64
    std::uint64_t claim_violations = 0;  // prime values whose expansion breaks the family's promise
    std::vector<std::uint64_t> smallest_primes;  // up to 10, increasing

    // MAIN_D only: every (d,t) with D <= N lies inside the grid.
    std::optional<std::uint64_t> N;
    std::uint64_t distinct_primes_to_N = 0;
    double reference = 0;  // N / log(N)^{3/2}
};

FamilyCensus family_prime_census(FamilyId family, std::int64_t param_bound);

struct GPrimeHit {
    std::uint64_t a = 0;
    std::uint64_t p = 0;
    std::size_t T = 0;
    std::uint64_t ones = 0;
};

/// Values a <= a_bound where [a; Y_{1,1}, 2a]^2 is a prime below 2^64.
std::vector<GPrimeHit> search_G_primes(const DigitTuple& xs, std::uint64_t a_bound);

/// T and the number of ones in the period of sqrt(D), without storing digits.
struct PeriodOnes {
    std::size_t T = 0;
    std::uint64_t ones = 0;
};
PeriodOnes period_ones(std::uint64_t D, std::size_t period_budget = kDefaultPeriodBudget);

}  // namespace cfprime
