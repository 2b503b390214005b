#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace cfprime {

/// Deterministic for every 64-bit input (strong-pseudoprime test with a
/// witness set proven for n < 2^64).
bool is_prime(std::uint64_t n);

/// Primes p_m for m in [start_index, start_index + count), with p_1 = 2.
struct PrimeRange {
    std::uint64_t start_index = 1;
    std::uint64_t count = 1;

    std::uint64_t end_index() const { return start_index + count; }
};

struct SieveConfig {
    std::size_t segment_bytes = std::size_t{8} << 20;
    std::size_t memory_limit_bytes = std::size_t{1} << 30;

    /// Defaults, with the memory cap taken from CFPRIME_MEM_MB when set.
    static SieveConfig from_environment();
};

/// Incremental segmented sieve over odd numbers. Emits primes in increasing
/// order together with their 1-based index.
class PrimeStream {
public:
    explicit PrimeStream(SieveConfig config = {});

    /// Appends up to `max_count` further primes to `out` (which is cleared
    /// first) and returns the index of the first one.
    std::uint64_t next_batch(std::size_t max_count, std::vector<std::uint64_t>& out);

    /// Skips forward so that the next emitted prime is p_index.
    void seek(std::uint64_t index);

    std::uint64_t next_index() const { return next_index_; }

private:
    void sieve_next_segment();
    void extend_base_primes(std::uint64_t limit);

    SieveConfig config_;
    std::vector<std::uint32_t> base_primes_;  // odd primes up to base_limit_
    std::uint64_t base_limit_ = 1;
    std::uint64_t segment_low_ = 0;  // next segment starts here (odd numbers only are marked)
    std::vector<std::uint8_t> composite_;
    std::vector<std::uint64_t> pending_;
    std::size_t pending_pos_ = 0;
    std::uint64_t next_index_ = 1;
    bool emitted_two_ = false;
};

/// Calls `sink(m, p_m)` for every index in `range`, in order.
void primes_stream(const PrimeRange& range, const std::function<void(std::uint64_t, std::uint64_t)>& sink,
                   SieveConfig config = {});

std::vector<std::uint64_t> primes_in_range(const PrimeRange& range, SieveConfig config = {});

std::uint64_t nth_prime(std::uint64_t m, SieveConfig config = {});

}  // namespace cfprime
