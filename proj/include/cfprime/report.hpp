#pragma once

// Text, CSV, JSON and SVG renderings of scan results. CSV is ASCII with LF
// line endings and a mandatory header; JSON uses the same field names.

#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cfprime/experiments.hpp"

namespace cfprime::report {

using nlohmann::json;

/// "%.12g"; "inf"/"nan" for non-finite values.
std::string decimal(double v);
/// "num/den = 0.xxxxxxxxxxxx"
std::string rational(const ExactRational& r);

std::string ak_csv(const AkScan& scan);
json ak_json(const AkScan& scan);

std::string l0_csv(const L0Scan& scan);
/// Rows carry the expansion of each smallest member.
json l0_json(const L0Scan& scan, std::size_t period_budget);

std::string l1_csv(const L1Scan& scan);
json l1_json(const L1Scan& scan);

std::string periods_csv(const PeriodScan& scan);
std::string period_histogram_csv(const PeriodScan& scan);
json periods_json(const PeriodScan& scan);

std::string freq_csv(const std::vector<FreqRow>& rows);
json freq_json(const std::vector<FreqRow>& rows);

json census_json(const FamilyCensus& c);
json grid_json(const MainDGridReport& r);
json period9_json(const Period9Report& r);

template <class Int>
json expansion_json(const BasicExpansion<Int>& e) {
    json digits = json::array();
    if constexpr (std::is_same_v<Int, std::uint64_t>) {
        for (auto d : e.period) digits.push_back(d);
        return json{{"D", e.D}, {"a0", e.a0}, {"period", digits}, {"T", e.T()}};
    } else {
        // arbitrary-precision values travel as decimal strings
        for (const auto& d : e.period) digits.push_back(to_string(d));
        return json{{"D", to_string(e.D)}, {"a0", to_string(e.a0)}, {"period", digits}, {"T", e.T()}};
    }
}

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

enum class PlotStyle { Scatter, Bars };

/// Minimal standalone SVG plot with linear axes.
std::string svg_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series, PlotStyle style = PlotStyle::Scatter);

}  // namespace cfprime::report
