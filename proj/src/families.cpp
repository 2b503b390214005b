#include "cfprime/families.hpp"

#include <algorithm>
#include <array>
#include <thread>

#include "cfprime/errors.hpp"
#include "cfprime/primes.hpp"
#include "cfprime/surd.hpp"

namespace cfprime {

namespace {

constexpr std::array<std::pair<FamilyId, std::string_view>, 8> kFamilyNames{{
    {FamilyId::L21_case2, "L21_case2"},
    {FamilyId::L21_case3, "L21_case3"},
    {FamilyId::L21_case4, "L21_case4"},
    {FamilyId::L21_case5, "L21_case5"},
    {FamilyId::L21_case6, "L21_case6"},
    {FamilyId::MAIN_D, "MAIN_D"},
    {FamilyId::PERIOD8, "PERIOD8"},
    {FamilyId::PERIOD9_F, "PERIOD9_F"},
}};

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

std::int64_t param(const FamilyParams& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw DomainError("missing family parameter '" + name + "'");
    return it->second;
}

void require(bool cond, const std::string& what) {
    if (!cond) throw DomainError(what);
}

std::vector<BigInt> ones(std::size_t n) { return std::vector<BigInt>(n, BigInt(1)); }

// (1^k, middle..., 1^k, 2a)
std::vector<BigInt> shape(std::size_t k, const std::vector<BigInt>& middle, const BigInt& a) {
    std::vector<BigInt> out = ones(k);
    out.insert(out.end(), middle.begin(), middle.end());
    for (std::size_t i = 0; i < k; ++i) out.emplace_back(1);
    out.emplace_back(2 * a);
    return out;
}

BigInt main_value(const BigInt& d, const BigInt& t) {
    const BigInt a0 = 4 * t + 3 * d + 5;
    return BigInt(a0 * a0 + 5 * t + 4 * d + 6);
}

BigInt exact_div(const BigInt& num, const BigInt& den, const char* what) {
    if (num % den != 0) throw DomainError(std::string("inexact division in ") + what);
    return BigInt(num / den);
}

}  // namespace

std::string_view family_name(FamilyId id) {
    for (const auto& [fid, name] : kFamilyNames) {
        if (fid == id) return name;
    }
    return "unknown";
}

std::optional<FamilyId> parse_family(std::string_view name) {
    for (const auto& [fid, n] : kFamilyNames) {
        if (n == name) return fid;
    }
    return std::nullopt;
}

FamilyPoint main_D(std::int64_t d, std::int64_t t) {
    require(d >= 1 && t >= 1, "MAIN_D needs d >= 1 and t >= 1");
    FamilyPoint fp;
    fp.family_id = FamilyId::MAIN_D;
    fp.params = {{"d", d}, {"t", t}};
    fp.a0 = 4 * big(t) + 3 * big(d) + 5;
    fp.D = main_value(big(d), big(t));
    fp.claimed_prefix = ones(3);
    return fp;
}

FamilyPoint lemma21_D(FamilyId which, const FamilyParams& params) {
    FamilyPoint fp;
    fp.family_id = which;
    fp.params = params;
    switch (which) {
    case FamilyId::L21_case2: {
        const auto t = param(params, "t");
        require(t >= 1, "L21_case2 needs t >= 1");
        const BigInt T = big(t);
        fp.a0 = 3 * T - 1;
        fp.D = T * (9 * T - 2);
        fp.claimed_period = shape(0, ones(3), fp.a0);
        break;
    }
    case FamilyId::L21_case3: {
        const auto t = param(params, "t");
        require(t >= 1, "L21_case3 needs t >= 1");
        const BigInt T = big(t);
        fp.a0 = 5 * T - 2;
        fp.D = 25 * T * T - 14 * T + 2;
        fp.claimed_period = shape(0, ones(4), fp.a0);
        break;
    }
    case FamilyId::L21_case4: {
        const auto u = param(params, "u");
        const auto v = param(params, "v");
        require(u >= 1 && v >= 1, "L21_case4 needs u >= 1 and v >= 1");
        const BigInt U = big(u), V = big(v);
        fp.a0 = 2 * (2 * U + 1) * V - U - 1;
        fp.D = (4 * V - 1) * ((2 * U + 1) * (2 * U + 1) * V - U * (U + 1));
        fp.claimed_period = shape(2, {BigInt(2 * U)}, fp.a0);
        break;
    }
    case FamilyId::L21_case5: {
        const auto x = param(params, "x");
        const auto t = param(params, "t");
        require(x >= 1, "L21_case5 needs x >= 1");
        const BigInt X = big(x), T = big(t);
        const BigInt modulus = 4 * X * X + 4 * X + 5;
        fp.a0 = modulus * T - (2 * X + 1) * (X * X + X + 1) * (X * X + 2 * X + 2);
        require(fp.a0 > 0, "L21_case5 needs t large enough that a > 0");
        const BigInt r = exact_div(BigInt(2 * (2 * X * X + 3 * X + 3) * fp.a0 + X * X + 2 * X + 2), modulus,
                                   "L21_case5");
        fp.D = fp.a0 * fp.a0 + r;
        fp.claimed_period = shape(2, {X, X}, fp.a0);
        break;
    }
    case FamilyId::L21_case6: {
        const auto x = param(params, "x");
        const auto t = param(params, "t");
        require(x >= 1 && t >= 0, "L21_case6 needs x >= 1 and t >= 0");
        const BigInt X = big(x), T = big(t);
        const BigInt modulus = 3 * (3 * X + 4);
        BigInt g;
        mpz_gcd(g.get_mpz_t(), BigInt(2 * (6 * X + 7)).get_mpz_t(), modulus.get_mpz_t());
        const BigInt twice_particular = (X + 1) * (3 * X + 8);
        require(twice_particular % 2 == 0 && (modulus * T) % g == 0, "L21_case6: a is not an integer");
        fp.a0 = modulus * T / g + twice_particular / 2;
        require(fp.a0 > 0, "L21_case6: a must be positive");
        const BigInt r = exact_div(BigInt(2 * (6 * X + 7) * fp.a0 + 4 * (X + 1)), modulus, "L21_case6");
        fp.D = fp.a0 * fp.a0 + r;
        fp.claimed_period = shape(3, {X}, fp.a0);
        break;
    }
    default:
        throw DomainError("lemma21_D accepts only the L21_case2..6 families");
    }
    fp.claimed_prefix = fp.claimed_period;
    fp.claimed_prefix.pop_back();
    return fp;
}

FamilyPoint period8_param(std::int64_t x, std::int64_t u) {
    require(x >= 1 && u >= 1, "PERIOD8 needs x >= 1 and u >= 1");
    const BigInt X = big(x), U = big(u);
    const BigInt d = (3 * X - 4) * U + 3 + X - X * X;
    const BigInt t = 2 * (3 * U - X - 2);
    require(d >= 1 && t >= 1, "PERIOD8 parameters give non-positive d or t");
    FamilyPoint fp;
    fp.family_id = FamilyId::PERIOD8;
    fp.params = {{"x", x}, {"u", u}, {"d", d.get_si()}, {"t", t.get_si()}};
    fp.a0 = 4 * t + 3 * d + 5;
    fp.D = main_value(d, t);
    fp.claimed_period = shape(3, {X}, fp.a0);
    fp.claimed_prefix = fp.claimed_period;
    fp.claimed_prefix.pop_back();
    return fp;
}

BigInt period8_product(std::int64_t x, std::int64_t u) {
    const BigInt X = big(x), U = big(u);
    return BigInt((9 * U - 3 * X - 1) * ((3 * X + 4) * (3 * X + 4) * U - (X + 1) * (3 * X * X + 6 * X + 2)));
}

Period9Coefficients period9_coefficients(std::int64_t n) {
    const BigInt N = big(n);
    auto poly = [&](std::initializer_list<long> coeffs) {
        BigInt acc = 0;  // Horner, highest degree first
        for (long c : coeffs) acc = acc * N + c;
        return acc;
    };
    Period9Coefficients c;
    const BigInt base = 36 * N * N + 24 * N + 13;
    c.P0 = base * base;
    c.P1 = 2 * poly({255744, 314064, 265824, 96196, 24300, -1898, 437});
    c.P2 = 2 * poly({25233408, 28330752, 23296712, 7136448, 1742464, -315412, 94262, -6994, 565});
    return c;
}

Period9Point period9_F(std::int64_t n, std::int64_t u) {
    require(n >= 1 && u >= 1, "PERIOD9_F needs n >= 1 and u >= 1");
    const BigInt N = big(n), U = big(u);
    const BigInt d0 = 4 * N * N * N * (592 * N - 457);
    const BigInt t0 = 2368 * N * N * N + 540 * N * N - 52 * N + 7;
    Period9Point r;
    r.d = (12 * N * N - 8 * N - 1) * U + d0;
    r.t = 4 * (3 * N + 1) * U + t0;
    r.D_via_main = main_value(r.d, r.t);
    const auto c = period9_coefficients(n);
    auto& fp = r.point;
    fp.family_id = FamilyId::PERIOD9_F;
    fp.params = {{"n", n}, {"u", u}};
    fp.D = c.P0 * U * U + c.P1 * U + c.P2;
    fp.a0 = 4 * r.t + 3 * r.d + 5;
    fp.claimed_period = shape(3, {BigInt(2 * N), BigInt(2 * N)}, fp.a0);
    fp.claimed_prefix = fp.claimed_period;
    fp.claimed_prefix.pop_back();
    return r;
}

DiscriminantReport discriminant_checks(std::int64_t d, std::int64_t t) {
    DiscriminantReport r;
    const BigInt D = big(d), T = big(t);
    r.disc_d = 4 * (10 + 3 * T);
    r.disc_t = 41 - 16 * D;
    r.disc_d_square = is_perfect_square(r.disc_d);
    r.disc_t_square = is_perfect_square(r.disc_t);
    const BigInt value = main_value(D, T);
    if (r.disc_t_square && (d == 1 || d == 2)) {
        r.factors = d == 1 ? std::pair{BigInt(T + 2), BigInt(16 * T + 37)}
                           : std::pair{BigInt(T + 3), BigInt(16 * T + 45)};
    } else if (r.disc_d_square) {
        // 10 + 3t = u^2;  9 D = (9d + 4u^2 - u - 23)(9d + 4u^2 + u - 23)
        const BigInt u = isqrt(BigInt(10 + 3 * T));
        r.u = u.get_si();
        BigInt left = 9 * D + 4 * u * u - u - 23;
        BigInt right = 9 * D + 4 * u * u + u - 23;
        for (int k = 0; k < 2; ++k) {
            if (left % 3 == 0) left /= 3;
            else if (right % 3 == 0) right /= 3;
        }
        if (left * right == value) r.factors = std::pair{left, right};
    }
    return r;
}

bool matches_period_block(const BigInt& D, const std::vector<BigInt>& block) {
    if (block.empty() || is_perfect_square(D)) return false;
    const auto e = expand_full_auto(D);
    if (block.size() % e.T() != 0) return false;
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (block[i] != e.period[i % e.T()]) return false;
    }
    return true;
}

bool MainDGridReport::ok() const {
    const bool only_13 = period7_points.size() == 1 && period7_points.front() == std::pair<std::int64_t, std::int64_t>{1, 3};
    return prefix3_violations == 0 && short_period_violations == 0 && only_13 && prefix4_violations == 0 &&
           factor_violations == 0 && period8_unmatched == 0 && period8_param_failures == 0;
}

namespace {

void scan_main_rows(std::int64_t d_lo, std::int64_t d_hi, std::int64_t grid, MainDGridReport& rep) {
    for (std::int64_t d = d_lo; d < d_hi; ++d) {
        for (std::int64_t t = 1; t <= grid; ++t) {
            const FamilyPoint fp = main_D(d, t);
            ++rep.points;
            const auto e = expand_full_auto(fp.D);
            const auto& a = e.period;
            const auto T = e.T();
            auto digit = [&](std::size_t i) -> const BigInt& { return a[i % T]; };
            if (!(digit(0) == 1 && digit(1) == 1 && digit(2) == 1)) ++rep.prefix3_violations;
            if (T < 7) ++rep.short_period_violations;
            if (T == 7) rep.period7_points.emplace_back(d, t);
            const bool four_ones = digit(0) == 1 && digit(1) == 1 && digit(2) == 1 && digit(3) == 1;
            if (four_ones != (d == 1 || d == 2)) ++rep.prefix4_violations;
            if (d == 1 || d == 2) {
                const auto dr = discriminant_checks(d, t);
                if (!dr.factors || dr.factors->first * dr.factors->second != fp.D || dr.factors->first <= 1 ||
                    dr.factors->second <= 1) {
                    ++rep.factor_violations;
                }
            }
            if (T == 8) {
                ++rep.period8_points;
                // x is the middle digit; u from t = 2(3u - x - 2).
                bool matched = false;
                if (a[3].fits_slong_p() && t % 2 == 0) {
                    const std::int64_t x = a[3].get_si();
                    const std::int64_t num = t / 2 + x + 2;
                    if (num % 3 == 0) {
                        try {
                            const auto p = period8_param(x, num / 3);
                            matched = p.params.at("d") == d && p.params.at("t") == t && p.D == fp.D;
                        } catch (const DomainError&) {
                        }
                    }
                }
                if (!matched) {
                    ++rep.period8_unmatched;
                    if (fits_u64(fp.D) && is_prime(to_u64(fp.D))) ++rep.period8_unmatched_primes;
                }
                // the linear condition behind the parametrisation, with x read off the expansion
                const BigInt x = a[3];
                if (6 * big(d) - (3 * x - 4) * big(t) - 2 * (5 * x + 1) != 0) ++rep.period8_off_equation;
            }
        }
    }
}

}  // namespace

MainDGridReport verify_main_D_grid(std::int64_t grid, unsigned workers) {
    require(grid >= 1, "grid bound must be positive");
    workers = std::max(1u, workers);
    std::vector<MainDGridReport> parts(workers);
    {
        std::vector<std::jthread> pool;
        const std::int64_t rows_per = (grid + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::int64_t lo = 1 + w * rows_per;
            const std::int64_t hi = std::min<std::int64_t>(grid + 1, lo + rows_per);
            if (lo >= hi) break;
            pool.emplace_back([=, &parts] { scan_main_rows(lo, hi, grid, parts[w]); });
        }
    }
    MainDGridReport rep;
    rep.grid = grid;
    for (auto& p : parts) {
        rep.points += p.points;
        rep.prefix3_violations += p.prefix3_violations;
        rep.short_period_violations += p.short_period_violations;
        rep.period7_points.insert(rep.period7_points.end(), p.period7_points.begin(), p.period7_points.end());
        rep.prefix4_violations += p.prefix4_violations;
        rep.factor_violations += p.factor_violations;
        rep.period8_points += p.period8_points;
        rep.period8_unmatched += p.period8_unmatched;
        rep.period8_unmatched_primes += p.period8_unmatched_primes;
        rep.period8_off_equation += p.period8_off_equation;
    }

    // Reverse direction: every parametrised point inside the grid has T == 8
    // with the promised shape. d >= 1 forces u > (x+2)/3, and t <= grid bounds u.
    for (std::int64_t x = 1; x <= 3 * grid + 3; ++x) {
        for (std::int64_t u = 1; 2 * (3 * u - x - 2) <= grid; ++u) {
            const BigInt X = big(x), U = big(u);
            const BigInt d = (3 * X - 4) * U + 3 + X - X * X;
            const BigInt t = 2 * (3 * U - X - 2);
            if (d < 1 || t < 1 || d > grid || t > grid) continue;
            ++rep.period8_param_points;
            const auto fp = period8_param(x, u);
            if (fp.D != period8_product(x, u) || !matches_period_block(fp.D, fp.claimed_period) ||
                period_length_auto(fp.D) != 8) {
                ++rep.period8_param_failures;
            }
        }
    }
    return rep;
}

Period9Report verify_period9(std::int64_t n_max, std::int64_t u_max) {
    Period9Report rep;
    rep.n_max = n_max;
    rep.u_max = u_max;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        for (std::int64_t u = 1; u <= u_max; ++u) {
            const auto r = period9_F(n, u);
            ++rep.points;
            if (r.D_via_main != r.point.D) ++rep.route_mismatches;
            const auto e = expand_full_auto(r.point.D);
            if (e.T() != 9 || e.period != r.point.claimed_period || e.a0 != r.point.a0) ++rep.period_violations;
        }
    }
    return rep;
}

}  // namespace cfprime
