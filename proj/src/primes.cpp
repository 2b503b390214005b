#include "cfprime/primes.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "cfprime/bigint.hpp"
#include "cfprime/errors.hpp"

namespace cfprime {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

// n - 1 = d * 2^s with d odd.
bool strong_probable_prime(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t witness) {
    const std::uint64_t a = witness % n;
    if (a == 0) return true;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

constexpr std::size_t kInitialSegmentBytes = std::size_t{1} << 16;

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sinclair's seven bases: no strong pseudoprime below 2^64 passes all of them.
    for (std::uint64_t w : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (!strong_probable_prime(n, d, s, w)) return false;
    }
    return true;
}

SieveConfig SieveConfig::from_environment() {
    SieveConfig c;
    if (const char* mb = std::getenv("CFPRIME_MEM_MB"); mb && *mb) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(mb, &end, 10);
        if (end && *end == '\0' && v > 0) c.memory_limit_bytes = static_cast<std::size_t>(v) << 20;
    }
    return c;
}

PrimeStream::PrimeStream(SieveConfig config) : config_(config) {
    if (config_.segment_bytes == 0) throw DomainError("segment size must be positive");
    if (config_.segment_bytes > config_.memory_limit_bytes) {
        throw BudgetExceeded("sieve segment of " + std::to_string(config_.segment_bytes) +
                             " bytes exceeds memory limit of " + std::to_string(config_.memory_limit_bytes));
    }
    segment_low_ = 3;
}

void PrimeStream::extend_base_primes(std::uint64_t limit) {
    if (limit <= base_limit_) return;
    limit = std::max<std::uint64_t>(limit, base_limit_ * 2);
    const std::size_t bytes = static_cast<std::size_t>(limit / 2 + 1);
    const std::size_t estimated_primes = static_cast<std::size_t>(limit / 5 + 16);
    if (bytes + estimated_primes * sizeof(std::uint32_t) + config_.segment_bytes > config_.memory_limit_bytes ||
        limit > 0xffffffffull) {
        throw BudgetExceeded("base-prime table up to " + std::to_string(limit) + " exceeds sieve memory limit");
    }
    // odd-only simple sieve: index i <-> 2i + 1
    std::vector<std::uint8_t> comp(bytes, 0);
    base_primes_.clear();
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
        if (comp[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        base_primes_.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t j = p * p / 2; 2 * j + 1 <= limit; j += p) comp[j] = 1;
    }
    base_limit_ = limit;
}

void PrimeStream::sieve_next_segment() {
    // Segments grow geometrically up to the configured size.
    const std::size_t grown = composite_.empty() ? kInitialSegmentBytes : composite_.size() * 2;
    const std::size_t bytes = std::min(grown, config_.segment_bytes);
    const std::uint64_t low = segment_low_;
    const std::uint64_t high = low + 2 * static_cast<std::uint64_t>(bytes);  // exclusive
    if (high < low) throw BudgetExceeded("prime stream exhausted the 64-bit range");
    extend_base_primes(isqrt(high) + 1);

    composite_.assign(bytes, 0);
    for (std::uint32_t q32 : base_primes_) {
        const std::uint64_t q = q32;
        if (q * q >= high) break;
        std::uint64_t start = std::max(q * q, (low + q - 1) / q * q);
        if ((start & 1) == 0) start += q;
        for (std::uint64_t j = (start - low) / 2; j < bytes; j += q) composite_[j] = 1;
    }
    pending_.clear();
    pending_pos_ = 0;
    for (std::size_t j = 0; j < bytes; ++j) {
        if (!composite_[j]) pending_.push_back(low + 2 * j);
    }
    segment_low_ = high;
}

std::uint64_t PrimeStream::next_batch(std::size_t max_count, std::vector<std::uint64_t>& out) {
    out.clear();
    const std::uint64_t first = next_index_;
    if (max_count == 0) return first;
    if (!emitted_two_) {
        out.push_back(2);
        emitted_two_ = true;
    }
    while (out.size() < max_count) {
        if (pending_pos_ == pending_.size()) sieve_next_segment();
        const std::size_t take = std::min(max_count - out.size(), pending_.size() - pending_pos_);
        out.insert(out.end(), pending_.begin() + static_cast<std::ptrdiff_t>(pending_pos_),
                   pending_.begin() + static_cast<std::ptrdiff_t>(pending_pos_ + take));
        pending_pos_ += take;
    }
    next_index_ += out.size();
    return first;
}

void PrimeStream::seek(std::uint64_t index) {
    if (index < next_index_) throw DomainError("PrimeStream cannot seek backwards");
    std::vector<std::uint64_t> scratch;
    while (next_index_ < index) {
        next_batch(static_cast<std::size_t>(std::min<std::uint64_t>(index - next_index_, 1u << 20)), scratch);
    }
}

void primes_stream(const PrimeRange& range, const std::function<void(std::uint64_t, std::uint64_t)>& sink,
                   SieveConfig config) {
    if (range.start_index < 1 || range.count < 1) throw DomainError("prime range must have start >= 1 and count >= 1");
    PrimeStream stream(config);
    stream.seek(range.start_index);
    std::vector<std::uint64_t> batch;
    std::uint64_t remaining = range.count;
    while (remaining) {
        const auto first = stream.next_batch(static_cast<std::size_t>(std::min<std::uint64_t>(remaining, 1u << 20)), batch);
        for (std::size_t i = 0; i < batch.size(); ++i) sink(first + i, batch[i]);
        remaining -= batch.size();
    }
}

std::vector<std::uint64_t> primes_in_range(const PrimeRange& range, SieveConfig config) {
    std::vector<std::uint64_t> out;
    out.reserve(static_cast<std::size_t>(range.count));
    primes_stream(range, [&](std::uint64_t, std::uint64_t p) { out.push_back(p); }, config);
    return out;
}

std::uint64_t nth_prime(std::uint64_t m, SieveConfig config) {
    if (m < 1) throw DomainError("prime index must be >= 1");
    std::uint64_t result = 0;
    primes_stream({m, 1}, [&](std::uint64_t, std::uint64_t p) { result = p; }, config);
    return result;
}

}  // namespace cfprime
