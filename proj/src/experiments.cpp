#include "cfprime/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "cfprime/errors.hpp"

namespace cfprime {

namespace {

// Runs visit(acc, m, p) over p_1..p_count. Each batch is cut into `workers`
// contiguous slices; the per-slice accumulators are merged in index order.
template <class Acc, class Visit>
Acc scan_primes(std::uint64_t prime_count, const ScanOptions& opts, const Acc& prototype, Visit visit) {
    if (prime_count == 0) throw DomainError("prime count must be positive");
    const unsigned workers = std::max(1u, opts.workers);
    Acc total = prototype;
    PrimeStream stream(opts.sieve);
    std::vector<std::uint64_t> batch;
    std::uint64_t remaining = prime_count;
    while (remaining) {
        const auto want = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, opts.batch_size));
        const std::uint64_t first = stream.next_batch(want, batch);
        remaining -= batch.size();
        if (workers == 1) {
            for (std::size_t i = 0; i < batch.size(); ++i) visit(total, first + i, batch[i]);
            continue;
        }
        std::vector<Acc> parts(workers, prototype);
        const std::size_t per = (batch.size() + workers - 1) / workers;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t lo = w * per;
                const std::size_t hi = std::min(batch.size(), lo + per);
                if (lo >= hi) break;
                pool.emplace_back([&, w, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i) visit(parts[w], first + i, batch[i]);
                });
            }
        }
        for (auto& part : parts) total.merge(std::move(part));
    }
    return total;
}

struct CountMin {
    std::uint64_t count = 0;
    std::optional<std::uint64_t> smallest;

    void add(std::uint64_t p) {
        ++count;
        if (!smallest) smallest = p;  // primes arrive in increasing order
    }
    void merge(const CountMin& later) {
        count += later.count;
        if (!smallest) smallest = later.smallest;
    }
};

template <class Key>
void merge_rows(std::map<Key, CountMin>& into, std::map<Key, CountMin>&& later) {
    for (auto& [k, v] : later) into[k].merge(v);
}

struct AkAcc {
    std::vector<CountMin> runs;  // index = run length, 0..kmax
    std::uint64_t longer = 0;
    std::uint64_t scanned = 0;

    void merge(AkAcc&& o) {
        for (std::size_t k = 0; k < runs.size(); ++k) runs[k].merge(o.runs[k]);
        longer += o.longer;
        scanned += o.scanned;
    }
};

}  // namespace

AkScan scan_Ak(unsigned kmax, std::uint64_t prime_count, const ScanOptions& opts) {
    if (kmax < 1 || kmax > 64) throw DomainError("kmax must be in 1..64");
    AkAcc proto;
    proto.runs.resize(kmax + 1);
    const AkAcc acc = scan_primes(prime_count, opts, proto, [kmax](AkAcc& a, std::uint64_t, std::uint64_t p) {
        ++a.scanned;
        DigitCursor cur(p);
        unsigned run = 0;
        // Reads at most kmax + 1 digits; stops at the first digit other than 1.
        while (run <= kmax && cur.next() == 1) ++run;
        if (run > kmax) ++a.longer;
        else a.runs[run].add(p);
    });

    AkScan out;
    out.primes_scanned = acc.scanned;
    out.first_digit_not_one = acc.runs[0].count;
    out.run_longer_than_kmax = acc.longer;
    for (unsigned k = 1; k <= kmax; ++k) {
        AkRow row;
        row.k = k;
        row.count = acc.runs[k].count;
        row.smallest_prime = acc.runs[k].smallest;
        if (row.smallest_prime) row.period_of_smallest = period_length(*row.smallest_prime, opts.period_budget);
        out.rows.push_back(row);
    }
    return out;
}

PeriodOnes period_ones(std::uint64_t D, std::size_t period_budget) {
    SurdState s = initial_state(D);
    std::uint64_t d = advance(s);
    const SurdState first = s;
    PeriodOnes r{1, d == 1 ? 1u : 0u};
    for (;;) {
        d = advance(s);
        if (s.same_position(first)) break;
        if (r.T >= period_budget) {
            throw BudgetExceeded("period of sqrt(" + std::to_string(D) + ") exceeds budget " +
                                 std::to_string(period_budget));
        }
        ++r.T;
        if (d == 1) ++r.ones;
    }
    return r;
}

namespace {

struct L0Acc {
    std::map<std::size_t, CountMin> rows;
    std::uint64_t survivors = 0;
    std::uint64_t scanned = 0;

    void merge(L0Acc&& o) {
        merge_rows(rows, std::move(o.rows));
        survivors += o.survivors;
        scanned += o.scanned;
    }
};

}  // namespace

L0Scan scan_L0(std::uint64_t prime_count, const ScanOptions& opts) {
    const std::size_t prefix_len = std::max<std::size_t>(1, opts.prefix_len);
    const std::size_t budget = opts.period_budget;
    const L0Acc acc = scan_primes(prime_count, opts, L0Acc{}, [=](L0Acc& a, std::uint64_t, std::uint64_t p) {
        ++a.scanned;
        DigitCursor cur(p);
        for (std::size_t i = 0; i < prefix_len; ++i) {
            if (cur.next() == 1) return;
        }
        ++a.survivors;
        const auto po = period_ones(p, budget);
        if (po.ones == 0) a.rows[po.T].add(p);
    });
    L0Scan out;
    out.primes_scanned = acc.scanned;
    out.phase1_survivors = acc.survivors;
    for (const auto& [i, cm] : acc.rows) {
        out.rows.push_back({i, cm.count, cm.smallest});
        out.members += cm.count;
    }
    return out;
}

double L1Scan::covered_fraction() const {
    if (covered.empty()) return 0;
    return static_cast<double>(std::count(covered.begin(), covered.end(), true)) / static_cast<double>(covered.size());
}

namespace {

struct L1Acc {
    std::map<std::uint64_t, CountMin> rows;
    std::vector<bool> covered;
    std::vector<RatioSample> samples;
    std::uint64_t scanned = 0;

    void merge(L1Acc&& o) {
        merge_rows(rows, std::move(o.rows));
        for (std::size_t b = 0; b < covered.size(); ++b) covered[b] = covered[b] || o.covered[b];
        samples.insert(samples.end(), o.samples.begin(), o.samples.end());
        scanned += o.scanned;
    }
};

}  // namespace

L1Scan scan_L1(std::uint64_t prime_count, std::size_t buckets, bool keep_samples, const ScanOptions& opts) {
    if (buckets == 0) throw DomainError("bucket count must be positive");
    L1Acc proto;
    proto.covered.assign(buckets, false);
    const std::size_t budget = opts.period_budget;
    const L1Acc acc = scan_primes(prime_count, opts, proto, [=](L1Acc& a, std::uint64_t m, std::uint64_t p) {
        ++a.scanned;
        const auto po = period_ones(p, budget);
        a.rows[po.ones].add(p);
        // ones < T always (the last digit is 2*a0), so the bucket index is < buckets.
        const auto b = static_cast<std::size_t>(static_cast<unsigned __int128>(po.ones) * buckets / po.T);
        a.covered[b] = true;
        if (keep_samples) a.samples.push_back({m, po.ones, po.T});
    });
    L1Scan out;
    out.primes_scanned = acc.scanned;
    out.buckets = buckets;
    out.covered = acc.covered;
    out.samples = acc.samples;
    for (const auto& [i, cm] : acc.rows) out.rows.push_back({i, cm.count, cm.smallest});
    return out;
}

double period_bound(std::uint64_t m) {
    const auto x = static_cast<long double>(m);
    return static_cast<double>(std::sqrt(x) * std::log(x));
}

namespace {

struct PeriodAcc {
    bool keep_series = false;
    std::vector<PeriodStats> series;
    std::map<std::size_t, std::uint64_t> W;
    std::vector<std::uint64_t> exceed;
    std::uint64_t scanned = 0;
    std::size_t max_T = 0;

    void merge(PeriodAcc&& o) {
        series.insert(series.end(), o.series.begin(), o.series.end());
        for (const auto& [t, c] : o.W) W[t] += c;
        exceed.insert(exceed.end(), o.exceed.begin(), o.exceed.end());
        scanned += o.scanned;
        max_T = std::max(max_T, o.max_T);
    }
};

}  // namespace

PeriodScan scan_periods(std::uint64_t prime_count, bool keep_series, const ScanOptions& opts) {
    PeriodAcc proto;
    proto.keep_series = keep_series;
    const std::size_t budget = opts.period_budget;
    const PeriodAcc acc = scan_primes(prime_count, opts, proto, [=](PeriodAcc& a, std::uint64_t m, std::uint64_t p) {
        ++a.scanned;
        const std::size_t T = period_length(p, budget);
        ++a.W[T];
        a.max_T = std::max(a.max_T, T);
        // The ratio is undefined at m = 1 (log 1 = 0), so the probe starts at m = 2.
        const long double bound = m >= 2 ? static_cast<long double>(period_bound(m)) : 0.0L;
        if (m >= 2 && static_cast<long double>(T) > bound) a.exceed.push_back(m);
        if (a.keep_series) {
            const double ratio = m >= 2 ? static_cast<double>(T / bound) : std::numeric_limits<double>::infinity();
            a.series.push_back({m, p, T, ratio});
        }
    });
    PeriodScan out;
    out.series = acc.series;
    out.W = acc.W;
    out.exceedances = acc.exceed;
    out.primes_scanned = acc.scanned;
    out.max_T = acc.max_T;
    return out;
}

ExactRational density_predict(const Pattern& pattern) {
    if (pattern.empty()) throw DomainError("pattern must be non-empty");
    const auto v = pattern.view();
    const BigInt qk = continuant_q(v);
    const BigInt qk1 = continuant_q(v.first(v.size() - 1));
    return ExactRational(BigInt(1), BigInt((qk + qk1) * qk));
}

ExactRational density_Ak(unsigned k) {
    if (k < 1) throw DomainError("k must be positive");
    return ExactRational(BigInt(1), BigInt(fibonacci(k + 3) * fibonacci(k + 1)));
}

namespace {

struct PatternAcc {
    std::vector<std::uint64_t> counts;
    void merge(PatternAcc&& o) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
    }
};

}  // namespace

std::vector<PatternCount> pattern_census(const std::vector<Pattern>& patterns, std::uint64_t prime_count,
                                         const ScanOptions& opts) {
    std::size_t longest = 0;
    for (const auto& pat : patterns) {
        if (pat.empty()) throw DomainError("pattern must be non-empty");
        longest = std::max(longest, pat.size());
    }
    PatternAcc proto;
    proto.counts.assign(patterns.size(), 0);
    const PatternAcc acc = scan_primes(prime_count, opts, proto, [&](PatternAcc& a, std::uint64_t, std::uint64_t p) {
        std::vector<std::uint64_t> head;
        head.reserve(longest);
        DigitCursor cur(p);
        for (std::size_t i = 0; i < longest; ++i) head.push_back(cur.next());
        for (std::size_t j = 0; j < patterns.size(); ++j) {
            const auto pv = patterns[j].view();
            if (std::equal(pv.begin(), pv.end(), head.begin())) ++a.counts[j];
        }
    });
    std::vector<PatternCount> out;
    for (std::size_t j = 0; j < patterns.size(); ++j) out.push_back({patterns[j], acc.counts[j]});
    return out;
}

double gauss_kuzmin(std::uint64_t k) {
    const auto x = static_cast<long double>(k);
    return static_cast<double>(std::log2(1.0L + 1.0L / (x * (x + 2))));
}

std::vector<FreqRow> digit_frequency(std::size_t position, std::uint64_t prime_count, std::uint64_t max_digit,
                                     const ScanOptions& opts) {
    if (position < 1) throw DomainError("position is 1-based");
    if (max_digit < 1) throw DomainError("max_digit must be positive");
    PatternAcc proto;
    proto.counts.assign(max_digit + 2, 0);
    const PatternAcc acc = scan_primes(prime_count, opts, proto, [=](PatternAcc& a, std::uint64_t, std::uint64_t p) {
        DigitCursor cur(p);
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < position; ++i) d = cur.next();
        ++a.counts[std::min(d, max_digit + 1)];
    });
    std::vector<FreqRow> rows;
    for (std::uint64_t k = 1; k <= max_digit + 1; ++k) {
        FreqRow r;
        r.position = position;
        r.digit = k;
        r.overflow = k > max_digit;
        r.count = acc.counts[k];
        r.total = prime_count;
        // Tail of the law: sum_{j > max} log2(1 + 1/(j(j+2))) = log2((max+2)/(max+1)).
        r.gauss_kuzmin = r.overflow ? std::log2(static_cast<double>(max_digit + 2) / static_cast<double>(max_digit + 1))
                                    : gauss_kuzmin(k);
        rows.push_back(r);
    }
    return rows;
}

namespace {

std::vector<FamilyPoint> family_grid(FamilyId family, std::int64_t B) {
    std::vector<FamilyPoint> pts;
    auto try_add = [&](auto&& make) {
        try {
            pts.push_back(make());
        } catch (const DomainError&) {
        }
    };
    switch (family) {
    case FamilyId::MAIN_D:
        for (std::int64_t d = 1; d <= B; ++d)
            for (std::int64_t t = 1; t <= B; ++t) pts.push_back(main_D(d, t));
        break;
    case FamilyId::L21_case2:
    case FamilyId::L21_case3:
        for (std::int64_t t = 1; t <= B; ++t) pts.push_back(lemma21_D(family, {{"t", t}}));
        break;
    case FamilyId::L21_case4:
        for (std::int64_t u = 1; u <= B; ++u)
            for (std::int64_t v = 1; v <= B; ++v) pts.push_back(lemma21_D(family, {{"u", u}, {"v", v}}));
        break;
    case FamilyId::L21_case5:
        for (std::int64_t x = 1; x <= B; ++x)
            for (std::int64_t t = 1; t <= B; ++t) try_add([&] { return lemma21_D(family, {{"x", x}, {"t", t}}); });
        break;
    case FamilyId::L21_case6:
        for (std::int64_t x = 1; x <= B; ++x)
            for (std::int64_t t = 0; t < B; ++t) try_add([&] { return lemma21_D(family, {{"x", x}, {"t", t}}); });
        break;
    case FamilyId::PERIOD8:
        for (std::int64_t x = 1; x <= B; ++x)
            for (std::int64_t u = 1; u <= B; ++u) try_add([&] { return period8_param(x, u); });
        break;
    case FamilyId::PERIOD9_F:
        for (std::int64_t n = 1; n <= B; ++n)
            for (std::int64_t u = 1; u <= B; ++u) pts.push_back(period9_F(n, u).point);
        break;
    }
    return pts;
}

}  // namespace

FamilyCensus family_prime_census(FamilyId family, std::int64_t param_bound) {
    if (param_bound < 1) throw DomainError("parameter bound must be positive");
    FamilyCensus c;
    c.family = family;
    c.param_bound = param_bound;
    std::vector<std::uint64_t> primes;
    for (const auto& fp : family_grid(family, param_bound)) {
        ++c.points;
        if (!fits_u64(fp.D)) {
            ++c.untested_points;
            continue;
        }
        const std::uint64_t D = to_u64(fp.D);
        if (!is_prime(D)) continue;
        ++c.prime_points;
        primes.push_back(D);
        const auto e = expand_full(D);
        bool ok = true;
        if (!fp.claimed_period.empty()) {
            ok = matches_period_block(fp.D, fp.claimed_period);
        } else {
            for (std::size_t i = 0; i < fp.claimed_prefix.size(); ++i) {
                ok = ok && fp.claimed_prefix[i] == e.period[i % e.T()];
            }
        }
        if (family == FamilyId::MAIN_D) {
            bool four_ones = true;
            for (std::size_t i = 0; i < 4; ++i) four_ones = four_ones && e.period[i % e.T()] == 1;
            ok = ok && !four_ones;
        }
        if (!ok) ++c.claim_violations;
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    c.smallest_primes.assign(primes.begin(), primes.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(10, primes.size())));
    if (family == FamilyId::MAIN_D) {
        // D grows in each parameter, so every representation of a value below
        // min(D(B+1,1), D(1,B+1)) has both parameters inside the grid.
        const BigInt edge = std::min(main_D(param_bound + 1, 1).D, main_D(1, param_bound + 1).D) - 1;
        const std::uint64_t N = to_u64(edge);
        c.N = N;
        c.distinct_primes_to_N = static_cast<std::uint64_t>(
            std::upper_bound(primes.begin(), primes.end(), N) - primes.begin());
        const double logN = std::log(static_cast<double>(N));
        c.reference = static_cast<double>(N) / std::pow(logN, 1.5);
    }
    return c;
}

std::vector<GPrimeHit> search_G_primes(const DigitTuple& xs, std::uint64_t a_bound) {
    std::vector<GPrimeHit> hits;
    for (std::uint64_t a = 1; a <= a_bound; ++a) {
        const auto g = G_closed(to_big(a), xs);
        if (!g.is_integer() || !fits_u64(g.num())) continue;
        const std::uint64_t p = to_u64(g.num());
        if (!is_prime(p)) continue;
        const auto po = period_ones(p);
        hits.push_back({a, p, po.T, po.ones});
    }
    return hits;
}

}  // namespace cfprime
