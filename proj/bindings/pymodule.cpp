/*
   Copyright 2026 The wicklab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wicklab/gauge.hpp"
#include "wicklab/lattice.hpp"
#include "wicklab/morsebott.hpp"
#include "wicklab/oracle.hpp"
#include "wicklab/parse.hpp"
#include "wicklab/problem.hpp"

namespace py = pybind11;
using namespace wicklab;

namespace {

Backend backend_from(const std::string& name) {
    if (name == "exact") return Backend::Exact;
    if (name == "float") return Backend::Float;
    throw Error("backend must be 'exact' or 'float'");
}

py::dict series_dict(const WickSeries& w) {
    py::dict d;
    d["S0"] = w.s0.str();
    d["detA"] = w.det_a.str();
    d["d"] = w.dim;
    d["kmin"] = w.kmin;
    d["N"] = w.order;
    py::list coeffs;
    for (int k = w.kmin; k <= w.order; ++k) coeffs.append(w.c(k).str());
    d["coeffs"] = coeffs;
    return d;
}

Integrand make_integrand(const std::string& action, const std::string& observable,
                         const std::vector<std::string>& variables, Backend b) {
    return Integrand::plain(parse_expression(action, variables, b),
                            parse_expression(observable, variables, b));
}

std::vector<Coefficient> make_point(const std::vector<std::string>& point, Backend b) {
    std::vector<Coefficient> out;
    for (const auto& t : point) out.push_back(Coefficient::parse(t, b));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Wick expansions of finite-dimensional integrals";

    py::register_exception<Error>(m, "WicklabError");

    m.def(
        "parse_polynomial",
        [](const std::string& text, const std::vector<std::string>& variables,
           const std::string& backend) {
            return parse_expression(text, variables, backend_from(backend)).str(variables);
        },
        py::arg("text"), py::arg("variables"), py::arg("backend") = "exact",
        "Parse an expression and return its canonical text form.");

    m.def(
        "wick_value",
        [](const std::string& poly, const std::vector<std::string>& variables,
           const std::vector<std::vector<std::string>>& propagator, bool brute_force) {
            Backend b = Backend::Exact;
            Polynomial p = parse_expression(poly, variables, b);
            int d = static_cast<int>(variables.size());
            Matrix g(d, d, b);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) g.at(i, j) = Coefficient::parse(propagator[i][j], b);
            Propagator prop = Propagator::supplied(std::move(g));
            Coefficient v = brute_force ? wick_value_bruteforce(p, prop) : wick_value(p, prop);
            return v.str();
        },
        py::arg("poly"), py::arg("variables"), py::arg("propagator"),
        py::arg("brute_force") = false,
        "Apply the Wick operator with the given contraction matrix.");

    m.def(
        "expand",
        [](const std::string& action, const std::string& observable,
           const std::vector<std::string>& variables, const std::vector<std::string>& point,
           int order, const std::string& backend) {
            Backend b = backend_from(backend);
            WickSeries w = wick_expand(make_integrand(action, observable, variables, b),
                                       make_point(point, b), order);
            return series_dict(w);
        },
        py::arg("action"), py::arg("observable"), py::arg("variables"), py::arg("point"),
        py::arg("order"), py::arg("backend") = "exact",
        "Wick expansion about a nondegenerate critical point.");

    m.def(
        "transform_expand",
        [](const std::string& action, const std::string& observable,
           const std::vector<std::string>& phi, const std::vector<std::string>& variables,
           const std::vector<std::string>& point, int order) {
            Backend b = Backend::Exact;
            std::vector<Polynomial> comps;
            for (const auto& t : phi) comps.push_back(parse_expression(t, variables, b));
            FormalDiffeo diffeo(std::move(comps));
            Integrand moved =
                transform_integrand(make_integrand(action, observable, variables, b), diffeo);
            py::dict d;
            d["action"] = moved.action.str(variables);
            d["observable"] = moved.observable.at(0).str(variables);
            d["series"] = series_dict(wick_expand(moved, make_point(point, b), order));
            return d;
        },
        py::arg("action"), py::arg("observable"), py::arg("phi"), py::arg("variables"),
        py::arg("point"), py::arg("order"),
        "Pull back an integrand by a formal diffeomorphism and expand.");

    m.def(
        "check_ibp",
        [](const std::string& action, const std::string& observable,
           const std::vector<std::string>& variables, const std::vector<std::string>& point,
           int order) {
            Backend b = Backend::Exact;
            Integrand in = make_integrand(action, observable, variables, b);
            std::vector<Coefficient> x0 = make_point(point, b);
            for (int i = 0; i < in.dim(); ++i)
                if (!check_schwinger_dyson(in, i, x0, order)) return false;
            return true;
        },
        py::arg("action"), py::arg("observable"), py::arg("variables"), py::arg("point"),
        py::arg("order"),
        "Total-derivative integrands expand to the zero series.");

    m.def(
        "lattice_demo",
        [](int n, int dim, int order) {
            LatticeSpec spec;
            spec.dim = dim;
            spec.sites_per_side = n;
            LatticeReport rep = run_cancellation_demo(spec, order);
            py::dict d;
            py::list totals;
            for (const auto& c : rep.totals) totals.append(c.str());
            d["totals"] = totals;
            d["observable_diagram"] = rep.observable_diagram.str();
            d["vertex_diagram"] = rep.vertex_diagram.str();
            d["naive_total"] = rep.naive_total.str();
            d["cancels"] = rep.cancels();
            return d;
        },
        py::arg("n"), py::arg("dim") = 1, py::arg("order") = 1,
        "Lattice change-of-variables cancellation report.");

    m.def(
        "morse_bott",
        [](const std::string& action, const std::string& observable, double radius,
           const std::string& fibration, double shear, int order, int nodes) {
            Integrand in = make_integrand(action, observable, {"x", "y"}, Backend::Exact);
            Fibration fib = fibration == "sheared" ? Fibration::sheared_circle(radius, shear)
                                                   : Fibration::radial_circle(radius);
            MorseBottSeries ms = wick_expand_morsebott(in, fib, order, nodes);
            py::dict d;
            d["C"] = ms.constant_value;
            d["fiber_dim"] = ms.fiber_dim;
            d["nodes"] = ms.nodes;
            d["rule"] = ms.rule;
            py::list raw, weighted;
            for (auto v : ms.raw) raw.append(v.real());
            for (auto v : ms.weighted) weighted.append(v.real());
            d["coeffs"] = raw;
            d["weighted"] = weighted;
            return d;
        },
        py::arg("action"), py::arg("observable") = "1", py::arg("radius") = 1.0,
        py::arg("fibration") = "radial", py::arg("shear") = 0.5, py::arg("order") = 1,
        py::arg("nodes") = 64,
        "Wick expansion about a circular critical manifold in the plane.");

    m.def(
        "integrate_numeric",
        [](const std::string& action, const std::string& observable,
           const std::vector<std::string>& variables, std::complex<double> hbar, double tol) {
            Integrand in = make_integrand(action, observable, variables, Backend::Float);
            auto r = integrate_numeric(in, hbar, std::nullopt, tol);
            return py::make_tuple(r.value, r.error_estimate);
        },
        py::arg("action"), py::arg("observable"), py::arg("variables"), py::arg("hbar"),
        py::arg("tol") = 1e-10,
        "Adaptive numeric integration of f e^{-S/hbar}.");

    m.def(
        "run",
        [](const std::string& command, const std::string& problem_json, int order,
           const std::string& backend, double tolerance, int nodes,
           const std::vector<double>& grid) {
            Problem problem = Problem::from_json_text(problem_json);
            RunOptions opts;
            if (order >= 0) opts.order = order;
            if (!backend.empty()) opts.backend = backend;
            opts.tolerance = tolerance;
            if (nodes > 0) opts.nodes = nodes;
            if (!grid.empty()) opts.grid = grid;
            RunResult r = run_command(command, problem, opts);
            py::dict d;
            d["exit_code"] = r.exit_code;
            d["report_json"] = r.report_json;
            d["report_csv"] = r.report_csv;
            return d;
        },
        py::arg("command"), py::arg("problem_json"), py::arg("order") = -1,
        py::arg("backend") = "", py::arg("tolerance") = 1e-9, py::arg("nodes") = -1,
        py::arg("grid") = std::vector<double>{},
        "Run a CLI subcommand against a problem description.");
}
