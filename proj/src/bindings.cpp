// Python bindings: the n-body integrator and Gram-matrix reduction, the
// certificate pipeline, and exact root counting.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>

#include "unhinge/certify.hpp"
#include "unhinge/nbody.hpp"
#include "unhinge/parse.hpp"
#include "unhinge/presets.hpp"
#include "unhinge/reduction.hpp"
#include "unhinge/sturm.hpp"

namespace py = pybind11;
using namespace unhinge;

namespace {

OrderConvention to_convention(const std::string& name) {
    if (name == "k13-largest") return OrderConvention::k13_largest;
    if (name == "k13-smallest") return OrderConvention::k13_smallest;
    throw std::invalid_argument("unknown order convention '" + name + "'");
}

// Parses a polynomial in at most one variable (any name) over its own
// one-symbol registry.
Poly univariate(const std::string& text) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isalpha(static_cast<unsigned char>(text[i])) ||
            text[i] == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) ||
                    text[j] == '_'))
                ++j;
            names.insert(text.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    if (names.size() > 1)
        throw std::invalid_argument("expected a univariate polynomial");
    const std::string var = names.empty() ? "x" : *names.begin();
    return parse_poly(text, make_registry({var}));
}

Rational exact(double v) { return Rational(mpq_class(v)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact analysis of n-body motions with a single varying mutual "
        "distance, with the numerical reduction used to cross-check it.";

    py::class_<BodyState>(m, "BodyState")
        .def(py::init<>())
        .def_readwrite("n", &BodyState::n)
        .def_readwrite("d", &BodyState::d)
        .def_readwrite("X", &BodyState::X)
        .def_readwrite("V", &BodyState::V)
        .def_readwrite("masses", &BodyState::masses)
        .def("validate", &BodyState::validate);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("state", &TrajectorySample::state)
        .def_readonly("error_estimate", &TrajectorySample::error_estimate);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("aborted", &Trajectory::aborted)
        .def_readonly("abort_reason", &Trajectory::abort_reason);

    py::class_<FirstIntegrals>(m, "FirstIntegrals")
        .def_readonly("energy", &FirstIntegrals::energy)
        .def_readonly("momentum", &FirstIntegrals::momentum)
        .def_readonly("angular", &FirstIntegrals::angular);

    py::class_<ReducedState>(m, "ReducedState")
        .def_readonly("n", &ReducedState::n)
        .def_readonly("b", &ReducedState::b)
        .def_readonly("g", &ReducedState::g)
        .def_readonly("d", &ReducedState::d)
        .def_readonly("rho", &ReducedState::rho);

    py::class_<MembershipRecord>(m, "MembershipRecord")
        .def_readonly("node", &MembershipRecord::node)
        .def_readonly("poly", &MembershipRecord::poly)
        .def_readonly("power", &MembershipRecord::power)
        .def_readonly("normal_form", &MembershipRecord::normal_form)
        .def_readonly("ok", &MembershipRecord::ok);

    py::class_<Certificate>(m, "Certificate")
        .def_readonly("problem", &Certificate::problem)
        .def_readonly("order_convention", &Certificate::order_convention)
        .def_readonly("verdict", &Certificate::verdict)
        .def_readonly("branch_count", &Certificate::branch_count)
        .def_readonly("leaf_count", &Certificate::leaf_count)
        .def_readonly("all_leaves_closed", &Certificate::all_leaves_closed)
        .def_readonly("all_memberships_ok", &Certificate::all_memberships_ok)
        .def_readonly("memberships", &Certificate::memberships)
        .def_readonly("json_text", &Certificate::json_text);

    m.def("make_preset", &make_preset, py::arg("name"), py::arg("n") = 0,
          py::arg("d") = 0, py::arg("seed") = 1,
          "Named initial condition: lagrange-equilateral, isosceles-balanced, "
          "kepler-pair, or random-seeded.");
    m.def("preset_angular_rate", &preset_angular_rate, py::arg("name"));
    m.def("distances", &distances, py::arg("state"),
          "Mutual distances, pairs (i, j) with i < j in lexicographic order.");
    m.def("first_integrals", &first_integrals, py::arg("state"));
    m.def("integrate", &integrate, py::arg("state"), py::arg("t_end"),
          py::arg("tol"), py::arg("sample_dt") = 0.0,
          "Adaptive integration of the full Newtonian system.");

    m.def("standard_coordinates", &standard_coordinates, py::arg("state"));
    m.def("reduced_rhs", &reduced_rhs, py::arg("reduced"), py::arg("masses"));
    m.def("balance_residual", &balance_residual, py::arg("b"),
          py::arg("masses"));
    m.def("equilibrium_residual", &equilibrium_residual, py::arg("reduced"),
          py::arg("masses"));
    m.def("reduction_residual", &reduction_residual, py::arg("trajectory"),
          py::arg("masses"), py::arg("h"),
          "Finite-difference mismatch between the sampled coordinates and "
          "the reduced equations of motion.");

    m.def(
        "certify",
        [](int n, const std::string& order_convention) {
            return certify(n, to_convention(order_convention));
        },
        py::arg("n"), py::arg("order_convention") = "k13-largest",
        "Run the exact case analysis for 3 or 4 bodies.");
    m.def("replay_matches", &replay_matches, py::arg("certificate"),
          "Re-run the pipeline and compare certificates byte for byte.");

    m.def(
        "count_roots",
        [](const std::string& poly, double lo, double hi) {
            return sturm_count(univariate(poly), exact(lo), exact(hi));
        },
        py::arg("poly"), py::arg("lo") = 0.0, py::arg("hi") = 10.0,
        "Distinct real roots on the half-open interval (lo, hi].");
    m.def(
        "isolate_roots",
        [](const std::string& poly, double lo, double hi) {
            RootIsolation iso = sturm_roots(univariate(poly), exact(lo),
                                            exact(hi));
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& [a, b] : iso.intervals)
                out.emplace_back(a.str(), b.str());
            return out;
        },
        py::arg("poly"), py::arg("lo") = 0.0, py::arg("hi") = 10.0,
        "Disjoint exact intervals (a, b], one distinct real root each.");
}
