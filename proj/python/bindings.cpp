#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfprime/cli.hpp"
#include "cfprime/continuants.hpp"
#include "cfprime/experiments.hpp"
#include "cfprime/families.hpp"
#include "cfprime/primes.hpp"
#include "cfprime/surd.hpp"

namespace py = pybind11;
using namespace cfprime;

namespace {

// Python ints cross the boundary as decimal strings so no width is lost.
BigInt from_py(const py::int_& v) {
    const auto s = py::str(py::handle(v)).cast<std::string>();
    if (s.empty() || s[0] == '-') throw py::value_error("expected a non-negative integer, got " + s);
    return BigInt(s);
}

py::int_ to_py(const BigInt& v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_py(const std::vector<BigInt>& v) {
    py::list out;
    for (const auto& x : v) out.append(to_py(x));
    return out;
}

py::object fraction(const ExactRational& r) {
    return py::module_::import("fractions").attr("Fraction")(to_py(r.num()), to_py(r.den()));
}

template <class T>
py::object optional(const std::optional<T>& v) {
    return v ? py::cast(*v) : py::none();
}

ScanOptions scan_options(unsigned workers) {
    ScanOptions o;
    o.workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    return o;
}

py::dict expand(const py::int_& D) {
    const auto e = expand_full_auto(from_py(D));
    py::dict d;
    d["D"] = to_py(e.D);
    d["a0"] = to_py(e.a0);
    d["period"] = to_py(e.period);
    d["T"] = e.T();
    return d;
}

py::tuple prefix(const py::int_& D, std::size_t k) {
    const auto r = expand_prefix(from_py(D), k);
    return py::make_tuple(to_py(r.digits), r.complete);
}

py::tuple cassini(const std::vector<std::uint64_t>& xs) {
    const DigitTuple t(xs);
    return py::make_tuple(to_py(cassini_even(t)), to_py(cassini_odd(t)));
}

py::dict main_d(std::int64_t d, std::int64_t t) {
    const auto p = main_D(d, t);
    py::dict out;
    out["D"] = to_py(p.D);
    out["a0"] = to_py(p.a0);
    out["prefix"] = to_py(p.claimed_prefix);
    return out;
}

py::list scan_ak(unsigned kmax, std::uint64_t primes, unsigned workers) {
    AkScan s;
    {
        py::gil_scoped_release nogil;
        s = scan_Ak(kmax, primes, scan_options(workers));
    }
    py::list rows;
    for (const auto& r : s.rows) {
        py::dict d;
        d["k"] = r.k;
        d["smallest_prime"] = optional(r.smallest_prime);
        d["period"] = optional(r.period_of_smallest);
        d["count"] = r.count;
        rows.append(d);
    }
    return rows;
}

py::dict scan_l0(std::uint64_t primes, unsigned workers) {
    L0Scan s;
    {
        py::gil_scoped_release nogil;
        s = scan_L0(primes, scan_options(workers));
    }
    py::dict out;
    for (const auto& r : s.rows) out[py::cast(r.i)] = py::make_tuple(r.count, optional(r.smallest));
    return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Continued fractions of square roots of primes";

    m.def("expand", &expand, py::arg("D"), "Full expansion of sqrt(D) as a dict with D, a0, period, T.");
    m.def(
        "period_length", [](const py::int_& D) { return period_length_auto(from_py(D)); }, py::arg("D"));
    m.def("prefix", &prefix, py::arg("D"), py::arg("k"),
          "First k partial quotients after a0, and whether the period closed within them.");
    m.def(
        "density", [](const std::vector<std::uint64_t>& p) { return fraction(density_predict(Pattern(p))); },
        py::arg("pattern"));
    m.def(
        "density_ak", [](unsigned k) { return fraction(density_Ak(k)); }, py::arg("k"));
    m.def("cassini", &cassini, py::arg("xs"), "The even and odd continuant identities; always (1, -1).");
    m.def(
        "f_closed",
        [](const py::int_& a, const std::vector<std::uint64_t>& xs) { return fraction(F_closed(from_py(a), DigitTuple(xs))); },
        py::arg("a"), py::arg("xs"));
    m.def(
        "g_closed",
        [](const py::int_& a, const std::vector<std::uint64_t>& xs) { return fraction(G_closed(from_py(a), DigitTuple(xs))); },
        py::arg("a"), py::arg("xs"));
    m.def("main_d", &main_d, py::arg("d"), py::arg("t"));
    m.def("is_prime", &is_prime, py::arg("n"));
    m.def(
        "nth_prime", [](std::uint64_t n) { return nth_prime(n); }, py::arg("n"));
    m.def("scan_ak", &scan_ak, py::arg("kmax"), py::arg("primes"), py::arg("workers") = 0);
    m.def("scan_l0", &scan_l0, py::arg("primes"), py::arg("workers") = 0,
          "Period length -> (count, smallest) over primes without a digit 1 in the period.");
    m.def("cli", &run_cli, py::arg("args"), "Runs the command-line tool; returns (exit code, stdout, stderr).");
}
