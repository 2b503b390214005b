#include "cfprime/cli.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "cfprime/continuants.hpp"
#include "cfprime/errors.hpp"
#include "cfprime/experiments.hpp"
#include "cfprime/families.hpp"
#include "cfprime/report.hpp"
#include "cfprime/surd.hpp"

namespace cfprime::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t primes = 100000;
    unsigned kmax = 10;
    std::size_t budget = kDefaultPeriodBudget;
    std::string format;
    std::string out_path;
    unsigned workers = 0;
    std::size_t prefix_len = 20;
    std::int64_t grid = 200;

    // per-command
    std::string D;
    std::string pattern;
    unsigned ak = 0;
    std::string plot = "period";
    std::size_t position = 1;
    std::uint64_t max_digit = 10;
    std::size_t buckets = 100;
    std::string family = "MAIN_D";
    std::string xs = "1";
    std::uint64_t a_bound = 1000;
    std::int64_t n_max = 5, u_max = 20;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;

    ScanOptions scan_options() const {
        ScanOptions o;
        o.workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
        o.period_budget = budget;
        o.prefix_len = prefix_len;
        return o;
    }

    std::string format_or(const std::string& fallback) const { return format.empty() ? fallback : format; }
};

std::vector<std::uint64_t> parse_digits(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad digit list: " + text);
        }
        if (used != item.size() || v == 0) throw UsageError("bad digit list: " + text);
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty digit list");
    return out;
}

std::string join(const std::vector<std::uint64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

void require_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (fmt == a) return;
    }
    throw UsageError("format '" + fmt + "' is not available for this command");
}

std::string dump(const report::json& j) { return j.dump(2) + "\n"; }

BigInt parse_radicand(const std::string& text) {
    try {
        BigInt D = parse_big(text);
        if (D < 1) throw UsageError("D must be positive");
        return D;
    } catch (const std::invalid_argument&) {
        throw UsageError("not an integer: " + text);
    }
}

std::string cmd_expand(const RunConfig& c) {
    const std::string fmt = c.format_or("text");
    require_format(fmt, {"text", "json"});
    const auto e = expand_full_auto(parse_radicand(c.D), c.budget);
    if (fmt == "json") {
        auto j = report::expansion_json(e);
        j["pell"] = to_string(pell_check(e));
        return dump(j);
    }
    return format_expansion(e) + "\n";
}

std::string cmd_prefix(const RunConfig& c) {
    const std::string fmt = c.format_or("text");
    require_format(fmt, {"text", "json"});
    const BigInt D = parse_radicand(c.D);
    const auto p = expand_prefix(D, c.prefix_len);
    std::vector<std::string> digits;
    for (const auto& d : p.digits) digits.push_back(to_string(d));
    if (fmt == "json") {
        return dump({{"D", to_string(D)}, {"a0", to_string(p.a0)}, {"k", c.prefix_len}, {"digits", digits},
                     {"complete", p.complete}});
    }
    std::string s = "I(" + to_string(D) + "," + std::to_string(c.prefix_len) + ") = (";
    for (std::size_t i = 0; i < digits.size(); ++i) s += (i ? "," : "") + digits[i];
    s += ")";
    if (p.complete) s += " [period closed after " + std::to_string(digits.size()) + "]";
    return s + "\n";
}

std::string cmd_scan_ak(const RunConfig& c) {
    const std::string fmt = c.format_or("csv");
    require_format(fmt, {"csv", "json", "svg"});
    if (c.kmax < 1 || c.kmax > 64) throw UsageError("--kmax must lie in 1..64");
    const auto scan = scan_Ak(c.kmax, c.primes, c.scan_options());
    if (fmt == "csv") return report::ak_csv(scan);
    if (fmt == "json") return dump(report::ak_json(scan));
    report::Series s{"count", {}};
    for (const auto& r : scan.rows) s.points.emplace_back(r.k, static_cast<double>(r.count));
    return report::svg_plot("leading runs of ones", "k", "count", {s}, report::PlotStyle::Bars);
}

std::string cmd_scan_l0(const RunConfig& c) {
    const std::string fmt = c.format_or("csv");
    require_format(fmt, {"csv", "json"});
    const auto scan = scan_L0(c.primes, c.scan_options());
    if (fmt == "csv") return report::l0_csv(scan);
    return dump(report::l0_json(scan, c.budget));
}

std::string cmd_scan_l1(const RunConfig& c) {
    const std::string fmt = c.format_or("csv");
    require_format(fmt, {"csv", "json", "svg"});
    const auto scan = scan_L1(c.primes, c.buckets, fmt == "svg", c.scan_options());
    if (fmt == "csv") return report::l1_csv(scan);
    if (fmt == "json") return dump(report::l1_json(scan));
    report::Series s{"ones / T", {}};
    for (const auto& r : scan.samples) {
        s.points.emplace_back(static_cast<double>(r.m), static_cast<double>(r.ones) / static_cast<double>(r.T));
    }
    return report::svg_plot("share of ones in the period", "m", "ones / T", {s});
}

std::string cmd_scan_periods(const RunConfig& c) {
    const std::string fmt = c.format_or("csv");
    require_format(fmt, {"csv", "json", "svg"});
    if (c.plot != "period" && c.plot != "ratio" && c.plot != "hist") throw UsageError("--plot must be period, ratio or hist");
    const bool hist = c.plot == "hist";
    const auto scan = scan_periods(c.primes, !(hist && fmt != "json"), c.scan_options());
    if (fmt == "csv") return hist ? report::period_histogram_csv(scan) : report::periods_csv(scan);
    if (fmt == "json") return dump(report::periods_json(scan));
    if (hist) {
        report::Series s{"primes", {}};
        for (const auto& [t, n] : scan.W) s.points.emplace_back(static_cast<double>(t), static_cast<double>(n));
        return report::svg_plot("period length histogram", "T", "primes", {s}, report::PlotStyle::Bars);
    }
    report::Series s{c.plot == "ratio" ? "T / (sqrt(m) ln m)" : "T", {}};
    for (const auto& r : scan.series) {
        s.points.emplace_back(static_cast<double>(r.m), c.plot == "ratio" ? r.ratio : static_cast<double>(r.T));
    }
    if (c.plot == "ratio") return report::svg_plot("period over bound", "m", "T / (sqrt(m) ln m)", {s});
    report::Series bound{"sqrt(m) ln m", {}};
    for (const auto& r : scan.series) bound.points.emplace_back(static_cast<double>(r.m), period_bound(r.m));
    return report::svg_plot("period length", "m", "T", {s, bound});
}

std::string cmd_density(const RunConfig& c, bool with_empirical) {
    const std::string fmt = c.format_or("text");
    require_format(fmt, {"text", "json"});
    if (c.pattern.empty() == (c.ak == 0)) throw UsageError("give exactly one of --pattern or --ak");

    std::string formula;
    ExactRational predicted;
    std::optional<std::uint64_t> count;
    if (!c.pattern.empty()) {
        const Pattern pat(parse_digits(c.pattern));
        const std::size_t k = pat.size();
        formula = "1/((q" + std::to_string(k) + "+q" + std::to_string(k - 1) + ")*q" + std::to_string(k) + ")";
        predicted = density_predict(pat);
        if (with_empirical) count = pattern_census({pat}, c.primes, c.scan_options()).front().count;
    } else {
        if (c.ak > 64) throw UsageError("--ak must lie in 1..64");
        formula = "1/(F" + std::to_string(c.ak + 3) + "*F" + std::to_string(c.ak + 1) + ")";
        predicted = density_Ak(c.ak);
        if (with_empirical) count = scan_Ak(c.ak, c.primes, c.scan_options()).rows.back().count;
    }

    if (fmt == "json") {
        report::json j{{"formula", formula}, {"predicted", predicted.str()}, {"predicted_decimal", predicted.to_double()}};
        if (count) {
            j["primes"] = c.primes;
            j["count"] = *count;
            j["empirical"] = ExactRational(BigInt(*count), BigInt(c.primes)).str();
        }
        return dump(j);
    }
    std::string s = formula + " = " + report::rational(predicted) + "\n";
    if (count) s += "empirical " + report::rational(ExactRational(BigInt(*count), BigInt(c.primes))) + "\n";
    return s;
}

std::string cmd_digit_freq(const RunConfig& c) {
    const std::string fmt = c.format_or("csv");
    require_format(fmt, {"csv", "json", "svg"});
    if (c.position < 1) throw UsageError("--position must be positive");
    const auto rows = digit_frequency(c.position, c.primes, c.max_digit, c.scan_options());
    if (fmt == "csv") return report::freq_csv(rows);
    if (fmt == "json") return dump(report::freq_json(rows));
    report::Series emp{"empirical", {}}, gk{"Gauss-Kuzmin", {}};
    for (const auto& r : rows) {
        emp.points.emplace_back(static_cast<double>(r.digit), r.empirical().to_double());
        gk.points.emplace_back(static_cast<double>(r.digit) + 0.2, r.gauss_kuzmin);
    }
    return report::svg_plot("digit frequency at position " + std::to_string(c.position), "digit", "frequency", {emp, gk},
                            report::PlotStyle::Bars);
}

FamilyId family_or_throw(const std::string& name) {
    const auto f = parse_family(name);
    if (!f) throw UsageError("unknown family: " + name);
    return *f;
}

std::string cmd_family_verify(const RunConfig& c, bool& ok) {
    const std::string fmt = c.format_or("text");
    require_format(fmt, {"text", "json"});
    const auto grid = verify_main_D_grid(c.grid, c.scan_options().workers);
    const auto p9 = verify_period9(c.n_max, c.u_max);
    ok = grid.ok() && p9.ok();
    if (fmt == "json") return dump({{"main_D", report::grid_json(grid)}, {"period9", report::period9_json(p9)}});
    std::ostringstream o;
    o << "MAIN_D grid 1.." << grid.grid << ": " << grid.points << " points\n"
      << "  prefix (1,1,1) violations: " << grid.prefix3_violations << "\n"
      << "  period < 7: " << grid.short_period_violations << "\n"
      << "  period 7 at:";
    for (const auto& [d, t] : grid.period7_points) o << " (" << d << "," << t << ")";
    o << "\n"
      << "  prefix (1,1,1,1) violations: " << grid.prefix4_violations << "\n"
      << "  factorisation violations: " << grid.factor_violations << "\n"
      << "  period 8: " << grid.period8_points << " points, " << grid.period8_unmatched << " unmatched ("
      << grid.period8_unmatched_primes << " prime), " << grid.period8_off_equation << " off the linear condition\n"
      << "  period-8 parametrisation: " << grid.period8_param_points << " points, " << grid.period8_param_failures
      << " failures\n"
      << "period-9 family n<=" << p9.n_max << " u<=" << p9.u_max << ": " << p9.points << " points, "
      << p9.route_mismatches << " route mismatches, " << p9.period_violations << " period violations\n"
      << (ok ? "OK" : "FAILED") << "\n";
    return o.str();
}

std::string cmd_family_census(const RunConfig& c) {
    const std::string fmt = c.format_or("text");
    require_format(fmt, {"text", "json"});
    const auto census = family_prime_census(family_or_throw(c.family), c.grid);
    if (fmt == "json") return dump(report::census_json(census));
    std::ostringstream o;
    o << family_name(census.family) << " parameters <= " << census.param_bound << ": " << census.points << " points, "
      << census.prime_points << " prime values, " << census.claim_violations << " claim violations";
    if (census.untested_points) o << ", " << census.untested_points << " values past 2^64 skipped";
    o << "\nsmallest primes: " << join(census.smallest_primes) << "\n";
    if (census.N) {
        o << "distinct primes up to N=" << *census.N << ": " << census.distinct_primes_to_N
          << ", N/ln(N)^1.5 = " << report::decimal(census.reference) << "\n";
    }
    return o.str();
}

std::string cmd_family_search(const RunConfig& c) {
    const std::string fmt = c.format_or("csv");
    require_format(fmt, {"csv", "json"});
    const DigitTuple xs(parse_digits(c.xs));
    const auto hits = search_G_primes(xs, c.a_bound);
    if (fmt == "json") {
        report::json rows = report::json::array();
        for (const auto& h : hits) rows.push_back({{"a", h.a}, {"p", h.p}, {"T", h.T}, {"ones", h.ones}});
        return dump({{"xs", xs.entries()}, {"a_bound", c.a_bound}, {"hits", rows}});
    }
    std::string s = "a,p,T,ones\n";
    for (const auto& h : hits) {
        s += std::to_string(h.a) + ',' + std::to_string(h.p) + ',' + std::to_string(h.T) + ',' + std::to_string(h.ones) + '\n';
    }
    return s;
}

std::string cmd_cassini(const RunConfig& c, bool& ok) {
    require_format(c.format_or("text"), {"text"});
    std::uint64_t checked = 0, even_bad = 0, odd_bad = 0;
    auto check = [&](const DigitTuple& xs) {
        ++checked;
        if (cassini_even(xs) != 1) ++even_bad;
        if (cassini_odd(xs) != -1) ++odd_bad;
    };
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::uint64_t> v(n, 1);
        while (true) {
            check(DigitTuple(v));
            std::size_t i = 0;
            while (i < n && v[i] == 5) v[i++] = 1;
            if (i == n) break;
            ++v[i];
        }
    }
    const std::uint64_t exhaustive = checked;
    std::mt19937_64 rng(c.seed);
    for (std::uint64_t s = 0; s < c.samples; ++s) {
        std::vector<std::uint64_t> v(1 + rng() % 12);
        for (auto& x : v) x = 1 + rng() % 1000;
        check(DigitTuple(v));
    }
    ok = even_bad == 0 && odd_bad == 0;
    std::ostringstream o;
    o << "exhaustive tuples (n<=4, entries<=5): " << exhaustive << "\n"
      << "random tuples: " << checked - exhaustive << "\n"
      << "even identity violations: " << even_bad << "\n"
      << "odd identity violations: " << odd_bad << "\n"
      << (ok ? "OK" : "FAILED") << "\n";
    return o.str();
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Continued fraction experiments on square roots of primes", "cfprime"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--primes", c.primes, "number of primes to scan")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--kmax", c.kmax, "largest run length")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--budget", c.budget, "maximum period length to expand")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--format", c.format, "csv, json, svg or text (per-command default)")
        ->check(CLI::IsMember({"csv", "json", "svg", "text"}));
    app.add_option("--out", c.out_path, "write output here instead of stdout");
    app.add_option("--workers", c.workers, "worker threads (default: all cores)")->check(CLI::PositiveNumber);
    app.add_option("--prefix-len", c.prefix_len, "prefix length")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--grid", c.grid, "parameter bound for family commands")->check(CLI::PositiveNumber)->capture_default_str();

    auto* expand = app.add_subcommand("expand", "full period of sqrt(D)");
    expand->add_option("D", c.D)->required();
    auto* prefix = app.add_subcommand("prefix", "first --prefix-len period digits of sqrt(D)");
    prefix->add_option("D", c.D)->required();
    auto* scan_ak = app.add_subcommand("scan-ak", "primes by number of leading ones");
    auto* scan_l0 = app.add_subcommand("scan-l0", "primes whose period has no digit 1");
    auto* scan_l1 = app.add_subcommand("scan-l1", "primes by number of ones per period");
    scan_l1->add_option("--buckets", c.buckets, "subintervals of [0,1] for the covering report")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* scan_per = app.add_subcommand("scan-periods", "period lengths of the first primes");
    scan_per->add_option("--plot", c.plot, "period, ratio or hist")->capture_default_str();
    auto* density = app.add_subcommand("density", "predicted density of a leading pattern");
    density->add_option("--pattern", c.pattern, "comma-separated digits, e.g. 1,1,1");
    density->add_option("--ak", c.ak, "exactly k leading ones")->check(CLI::PositiveNumber);
    auto* freq = app.add_subcommand("digit-freq", "digit frequencies at one period position");
    freq->add_option("--position", c.position)->check(CLI::PositiveNumber)->capture_default_str();
    freq->add_option("--max-digit", c.max_digit)->check(CLI::PositiveNumber)->capture_default_str();
    auto* family = app.add_subcommand("family", "radicand families");
    family->require_subcommand(1);
    auto* fverify = family->add_subcommand("verify", "check the MAIN_D grid and the period-9 family");
    fverify->add_option("--n-max", c.n_max)->check(CLI::PositiveNumber)->capture_default_str();
    fverify->add_option("--u-max", c.u_max)->check(CLI::PositiveNumber)->capture_default_str();
    auto* fsearch = family->add_subcommand("search", "prime values of [a; Y, 2a]^2");
    fsearch->add_option("--xs", c.xs, "comma-separated x_1..x_n")->capture_default_str();
    fsearch->add_option("--a-bound", c.a_bound)->check(CLI::PositiveNumber)->capture_default_str();
    auto* fcensus = family->add_subcommand("census", "prime values over a parameter grid");
    fcensus->add_option("--family", c.family, "MAIN_D, L21_case2..6, PERIOD8, PERIOD9_F")->capture_default_str();
    auto* cassini = app.add_subcommand("cassini-selftest", "palindromic Cassini identities");
    cassini->add_option("--samples", c.samples)->capture_default_str();
    cassini->add_option("--seed", c.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const bool empirical = app.count("--primes") > 0;
    try {
        bool ok = true;
        std::string text;
        if (*expand) text = cmd_expand(c);
        else if (*prefix) text = cmd_prefix(c);
        else if (*scan_ak) text = cmd_scan_ak(c);
        else if (*scan_l0) text = cmd_scan_l0(c);
        else if (*scan_l1) text = cmd_scan_l1(c);
        else if (*scan_per) text = cmd_scan_periods(c);
        else if (*density) text = cmd_density(c, empirical);
        else if (*freq) text = cmd_digit_freq(c);
        else if (*fverify) text = cmd_family_verify(c, ok);
        else if (*fsearch) text = cmd_family_search(c);
        else if (*fcensus) text = cmd_family_census(c);
        else if (*cassini) text = cmd_cassini(c, ok);

        if (c.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(c.out_path, std::ios::binary);
            if (!f || !(f << text)) {
                err << "cannot write " << c.out_path << "\n";
                return 1;
            }
        }
        return ok ? 0 : 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("cfprime");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    argv.push_back(nullptr);
    return run(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace cfprime::cli
