#include "cfprime/surd.hpp"

namespace cfprime {

BigExpansion expand_full_auto(const BigInt& D, std::size_t period_budget) {
    if (!fits_u64(D)) return expand_full(D, period_budget);
    const Expansion e = expand_full(to_u64(D), period_budget);
    BigExpansion out{D, to_big(e.a0), {}};
    out.period.reserve(e.period.size());
    for (auto d : e.period) out.period.push_back(to_big(d));
    return out;
}

std::size_t period_length_auto(const BigInt& D, std::size_t period_budget) {
    if (!fits_u64(D)) return period_length(D, period_budget);
    return period_length(to_u64(D), period_budget);
}

}  // namespace cfprime
