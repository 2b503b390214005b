#pragma once

// Parametric radicand families with prescribed leading digits or period
// shapes, plus the grid checks that confirm them with the surd engine.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfprime/bigint.hpp"

namespace cfprime {

enum class FamilyId {
    L21_case2,  // [a; 1,1,1,2a]
    L21_case3,  // [a; 1,1,1,1,2a]
    L21_case4,  // [a; 1,1,x,1,1,2a]
    L21_case5,  // [a; 1,1,x,x,1,1,2a]
    L21_case6,  // [a; 1,1,1,x,1,1,1,2a]
    MAIN_D,     // (4t+3d+5)^2 + 5t+4d+6
    PERIOD8,
    PERIOD9_F,
};

std::string_view family_name(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);

using FamilyParams = std::map<std::string, std::int64_t>;

struct FamilyPoint {
    FamilyId family_id{};
    FamilyParams params;
    BigInt D;
    BigInt a0;  // floor(sqrt(D)) as given by the construction
    /// Leading period digits the construction guarantees.
    std::vector<BigInt> claimed_prefix;
    /// Whole period (ending in 2*a0) when the construction fixes it; empty otherwise.
    std::vector<BigInt> claimed_period;
};

/// (4t+3d+5)^2 + 5t+4d+6 with a0 = 4t+3d+5. Requires d, t >= 1.
FamilyPoint main_D(std::int64_t d, std::int64_t t);

/// Radicands with short periods starting with ones, by case.
///   case 2: {t}        a = 3t-1,               D = t(9t-2)
///   case 3: {t}        a = 5t-2,               D = 25t^2-14t+2
///   case 4: {u, v}     x = 2u, a = 2(2u+1)v-u-1, D = (4v-1)((2u+1)^2 v - u(u+1))
///   case 5: {x, t}     a = (4x^2+4x+5)t - (2x+1)(x^2+x+1)(x^2+2x+2)
///   case 6: {x, t}     a = 3(3x+4)t/g + (x+1)(3x+8)/2, g = gcd(2(6x+7), 3(3x+4)), t >= 0
/// Cases 5 and 6 obtain D = a^2 + r by exact division.
FamilyPoint lemma21_D(FamilyId which, const FamilyParams& params);

/// Period-8 members of MAIN_D: d = (3x-4)u + 3 + x - x^2, t = 2(3u-x-2).
FamilyPoint period8_param(std::int64_t x, std::int64_t u);

/// D = (9u-3x-1)((3x+4)^2 u - (x+1)(3x^2+6x+2)), the factored value of period8_param.
BigInt period8_product(std::int64_t x, std::int64_t u);

struct Period9Point {
    FamilyPoint point;  // D from the polynomial route F(n,u)
    BigInt d;
    BigInt t;
    BigInt D_via_main;  // (4t+3d+5)^2 + 5t+4d+6
};

/// Period-9 members of MAIN_D, F(n, u) = P0(n) u^2 + P1(n) u + P2(n).
Period9Point period9_F(std::int64_t n, std::int64_t u);

struct Period9Coefficients {
    BigInt P0, P1, P2;
};
Period9Coefficients period9_coefficients(std::int64_t n);

struct DiscriminantReport {
    BigInt disc_d;  // 4(10 + 3t)
    BigInt disc_t;  // 41 - 16d
    bool disc_d_square = false;
    bool disc_t_square = false;
    /// u with t = (u^2 - 10)/3 when disc_d is a square.
    std::optional<std::int64_t> u;
    /// Two integer factors of D(d,t) when a discriminant is a square.
    std::optional<std::pair<BigInt, BigInt>> factors;
};

DiscriminantReport discriminant_checks(std::int64_t d, std::int64_t t);

// ---- grid verification ----------------------------------------------------

struct MainDGridReport {
    std::int64_t grid = 0;
    std::uint64_t points = 0;
    std::uint64_t prefix3_violations = 0;       // I_3 != (1,1,1)
    std::uint64_t short_period_violations = 0;  // T < 7
    std::vector<std::pair<std::int64_t, std::int64_t>> period7_points;
    std::uint64_t prefix4_violations = 0;   // I_4 == (1,1,1,1) iff d in {1,2}
    std::uint64_t factor_violations = 0;    // D(1,t), D(2,t) factorisations
    std::uint64_t period8_points = 0;
    std::uint64_t period8_unmatched = 0;    // T == 8 but no (x,u) reproduces (d,t)
    std::uint64_t period8_unmatched_primes = 0;
    std::uint64_t period8_off_equation = 0;  // T == 8 with 6d - (3x-4)t != 2(5x+1)
    std::uint64_t period8_param_points = 0;
    std::uint64_t period8_param_failures = 0;  // param point in grid without T == 8 / shape

    bool ok() const;
};

/// Checks the MAIN_D digit and period statements for all 1 <= d, t <= grid.
MainDGridReport verify_main_D_grid(std::int64_t grid, unsigned workers = 1);

struct Period9Report {
    std::int64_t n_max = 0, u_max = 0;
    std::uint64_t points = 0;
    std::uint64_t route_mismatches = 0;
    std::uint64_t period_violations = 0;

    bool ok() const { return route_mismatches == 0 && period_violations == 0; }
};

Period9Report verify_period9(std::int64_t n_max, std::int64_t u_max);

/// True if sqrt(D) has `block` as a whole number of periods.
bool matches_period_block(const BigInt& D, const std::vector<BigInt>& block);

}  // namespace cfprime
