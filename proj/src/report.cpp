#include "cfprime/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cfprime::report {

namespace {

template <class T>
std::string opt(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string();
}

template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string decimal(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string rational(const ExactRational& r) { return r.str() + " = " + decimal(r.to_double()); }

std::string ak_csv(const AkScan& scan) {
    std::string out = "k,smallest_prime,period,count\n";
    for (const auto& r : scan.rows) {
        out += std::to_string(r.k) + ',' + opt(r.smallest_prime) + ',' + opt(r.period_of_smallest) + ',' +
               std::to_string(r.count) + '\n';
    }
    return out;
}

json ak_json(const AkScan& scan) {
    json rows = json::array();
    for (const auto& r : scan.rows) {
        rows.push_back({{"k", r.k},
                        {"smallest_prime", opt_json(r.smallest_prime)},
                        {"period", opt_json(r.period_of_smallest)},
                        {"count", r.count}});
    }
    return {{"primes_scanned", scan.primes_scanned},
            {"first_digit_not_one", scan.first_digit_not_one},
            {"run_longer_than_kmax", scan.run_longer_than_kmax},
            {"rows", rows}};
}

std::string l0_csv(const L0Scan& scan) {
    std::string out = "i,count,smallest\n";
    for (const auto& r : scan.rows) out += std::to_string(r.i) + ',' + std::to_string(r.count) + ',' + opt(r.smallest) + '\n';
    return out;
}

json l0_json(const L0Scan& scan, std::size_t period_budget) {
    json rows = json::array();
    for (const auto& r : scan.rows) {
        json row{{"i", r.i}, {"count", r.count}, {"smallest", opt_json(r.smallest)}};
        if (r.smallest) row["expansion"] = format_expansion(expand_full(*r.smallest, period_budget));
        rows.push_back(row);
    }
    return {{"primes_scanned", scan.primes_scanned},
            {"phase1_survivors", scan.phase1_survivors},
            {"members", scan.members},
            {"rows", rows}};
}

std::string l1_csv(const L1Scan& scan) {
    std::string out = "i,count,smallest\n";
    for (const auto& r : scan.rows) out += std::to_string(r.i) + ',' + std::to_string(r.count) + ',' + opt(r.smallest) + '\n';
    return out;
}

json l1_json(const L1Scan& scan) {
    json rows = json::array();
    for (const auto& r : scan.rows) rows.push_back({{"i", r.i}, {"count", r.count}, {"smallest", opt_json(r.smallest)}});
    json uncovered = json::array();
    for (std::size_t b = 0; b < scan.covered.size(); ++b) {
        if (!scan.covered[b]) uncovered.push_back(b);
    }
    json out{{"primes_scanned", scan.primes_scanned},
             {"buckets", scan.buckets},
             {"covered_fraction", scan.covered_fraction()},
             {"uncovered_buckets", uncovered},
             {"rows", rows}};
    if (!scan.samples.empty()) {
        json samples = json::array();
        for (const auto& s : scan.samples) samples.push_back({{"m", s.m}, {"ones", s.ones}, {"T", s.T}});
        out["samples"] = samples;
    }
    return out;
}

std::string periods_csv(const PeriodScan& scan) {
    std::string out = "m,p,T,ratio\n";
    for (const auto& s : scan.series) {
        out += std::to_string(s.m) + ',' + std::to_string(s.p) + ',' + std::to_string(s.T) + ',' + decimal(s.ratio) + '\n';
    }
    return out;
}

std::string period_histogram_csv(const PeriodScan& scan) {
    std::string out = "i,count\n";
    for (const auto& [t, c] : scan.W) out += std::to_string(t) + ',' + std::to_string(c) + '\n';
    return out;
}

json periods_json(const PeriodScan& scan) {
    json series = json::array();
    for (const auto& s : scan.series) {
        series.push_back({{"m", s.m}, {"p", s.p}, {"T", s.T}, {"ratio", std::isfinite(s.ratio) ? json(s.ratio) : json(nullptr)}});
    }
    json W = json::array();
    for (const auto& [t, c] : scan.W) W.push_back({{"i", t}, {"count", c}});
    return {{"primes_scanned", scan.primes_scanned},
            {"max_T", scan.max_T},
            {"distinct_periods", scan.W.size()},
            {"exceedances", scan.exceedances},
            {"W", W},
            {"series", series}};
}

std::string freq_csv(const std::vector<FreqRow>& rows) {
    std::string out = "position,digit,empirical,gauss_kuzmin\n";
    for (const auto& r : rows) {
        const std::string digit = r.overflow ? std::to_string(r.digit) + "+" : std::to_string(r.digit);
        out += std::to_string(r.position) + ',' + digit + ',' + decimal(r.empirical().to_double()) + ',' +
               decimal(r.gauss_kuzmin) + '\n';
    }
    return out;
}

json freq_json(const std::vector<FreqRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"position", r.position},
                       {"digit", r.digit},
                       {"overflow", r.overflow},
                       {"count", r.count},
                       {"total", r.total},
                       {"empirical", r.empirical().to_double()},
                       {"gauss_kuzmin", r.gauss_kuzmin}});
    }
    return out;
}

json census_json(const FamilyCensus& c) {
    json out{{"family", std::string(family_name(c.family))},
             {"param_bound", c.param_bound},
             {"points", c.points},
             {"prime_points", c.prime_points},
             {"untested_points", c.untested_points},
             {"claim_violations", c.claim_violations},
             {"smallest_primes", c.smallest_primes}};
    if (c.N) {
        out["N"] = *c.N;
        out["distinct_primes_to_N"] = c.distinct_primes_to_N;
        out["reference"] = c.reference;
    }
    return out;
}

json grid_json(const MainDGridReport& r) {
    json p7 = json::array();
    for (const auto& [d, t] : r.period7_points) p7.push_back({d, t});
    return {{"grid", r.grid},
            {"points", r.points},
            {"prefix3_violations", r.prefix3_violations},
            {"short_period_violations", r.short_period_violations},
            {"period7_points", p7},
            {"prefix4_violations", r.prefix4_violations},
            {"factor_violations", r.factor_violations},
            {"period8_points", r.period8_points},
            {"period8_unmatched", r.period8_unmatched},
            {"period8_unmatched_primes", r.period8_unmatched_primes},
            {"period8_off_equation", r.period8_off_equation},
            {"period8_param_points", r.period8_param_points},
            {"period8_param_failures", r.period8_param_failures},
            {"ok", r.ok()}};
}

json period9_json(const Period9Report& r) {
    return {{"n_max", r.n_max},
            {"u_max", r.u_max},
            {"points", r.points},
            {"route_mismatches", r.route_mismatches},
            {"period_violations", r.period_violations},
            {"ok", r.ok()}};
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, PlotStyle style) {
    constexpr double W = 800, H = 500, left = 70, right = 20, top = 40, bottom = 60;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (first) {
                x0 = x1 = x;
                y0 = y1 = y;
                first = false;
            }
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    }
    y0 = std::min(y0, 0.0);
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    const double pw = W - left - right, ph = H - top - bottom;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(left + pw) << "\" y2=\""
      << num(top + ph) << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\"" << num(top + ph)
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        o << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(top + ph + 18)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << decimal(xv) << "</text>\n";
        o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(sy(yv) + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << decimal(yv) << "</text>\n";
    }
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(H - 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(x_label) << "</text>\n";
    o << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" transform=\"rotate(-90 16 " << num(top + ph / 2)
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(y_label) << "</text>\n";

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = colors[k % 4];
        o << "<g fill=\"" << color << "\" stroke=\"" << color << "\"><title>" << escape(series[k].label) << "</title>\n";
        for (const auto& [x, y] : series[k].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (style == PlotStyle::Bars) {
                o << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(x)) << "\" y2=\""
                  << num(sy(y)) << "\" stroke-width=\"3\"/>\n";
            } else {
                o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"1\"/>\n";
            }
        }
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace cfprime::report
