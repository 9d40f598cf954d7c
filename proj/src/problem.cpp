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

#include "wicklab/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wicklab/gauge.hpp"
#include "wicklab/lattice.hpp"
#include "wicklab/morsebott.hpp"
#include "wicklab/oracle.hpp"
#include "wicklab/parse.hpp"

namespace wicklab {

using nlohmann::json;

namespace {

std::vector<std::string> str_list(const json& j) {
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (v.is_string()) out.push_back(v.get<std::string>());
        else out.push_back(v.dump());
    }
    return out;
}

Coefficient parse_scalar(const std::string& text, const std::vector<std::string>& vars,
                         Backend b) {
    Polynomial p = parse_expression(text, vars, b);
    if (!p.is_constant()) throw Error("expected a constant expression: " + text);
    return p.constant_term();
}

}  // namespace

Problem Problem::from_json_text(const std::string& text) {
    json j = json::parse(text);
    Problem p;
    p.dimension = j.value("dimension", 1);
    if (j.contains("variables")) p.variables = str_list(j.at("variables"));
    else
        for (int i = 0; i < p.dimension; ++i) p.variables.push_back("x" + std::to_string(i + 1));
    if (static_cast<int>(p.variables.size()) != p.dimension)
        throw Error("variable list length differs from the declared dimension");
    p.action = j.value("action", "0");
    p.observable = j.value("observable", "1");
    if (j.contains("point")) p.point = str_list(j.at("point"));
    else p.point.assign(static_cast<std::size_t>(p.dimension), "0");
    p.order = j.value("order", 2);
    std::string backend = j.value("backend", "exact");
    if (backend == "exact") p.backend = Backend::Exact;
    else if (backend == "float") p.backend = Backend::Float;
    else throw Error("backend must be \"exact\" or \"float\"");

    if (j.contains("gauge")) {
        const json& jg = j.at("gauge");
        Gauge g;
        for (const auto& gen : jg.at("generators")) {
            std::vector<std::vector<std::string>> rows;
            for (const auto& row : gen) rows.push_back(str_list(row));
            g.generators.push_back(std::move(rows));
        }
        if (jg.contains("slice")) {
            const json& js = jg.at("slice");
            if (js.contains("affine")) {
                g.slice_base = str_list(js.at("affine").at("base"));
                std::vector<std::vector<std::string>> dirs;
                for (const auto& row : js.at("affine").at("directions"))
                    dirs.push_back(str_list(row));
                g.slice_directions = std::move(dirs);
                g.slice_param_lo = js.at("affine").value("param_lo", -1e300);
                g.slice_param_hi = js.at("affine").value("param_hi", 1e300);
            } else if (js.contains("level_set")) {
                g.level_f = str_list(js.at("level_set").at("F"));
                g.level_q0 = str_list(js.at("level_set").at("q0"));
            }
        }
        if (jg.contains("weighted")) {
            const json& jw = jg.at("weighted");
            g.weighted_f = str_list(jw.at("F"));
            g.weighted_h = jw.at("h").get<std::string>();
            g.weighted_q0 = str_list(jw.at("q0"));
        }
        p.gauge = std::move(g);
    }
    if (j.contains("morse_bott")) {
        const json& jm = j.at("morse_bott");
        MorseBott m;
        m.fibration = jm.value("fibration", "radial");
        m.radius = jm.value("radius", 1.0);
        m.shear = jm.value("shear", 0.5);
        m.nodes = jm.value("nodes", 64);
        p.morse_bott = m;
    }
    if (j.contains("sweep")) {
        Sweep s;
        for (const auto& v : j.at("sweep").at("grid")) s.grid.push_back(v.get<double>());
        p.sweep = std::move(s);
    }
    if (j.contains("transform")) {
        Transform t;
        t.phi = str_list(j.at("transform").at("phi"));
        t.degree_cap = j.at("transform").value("degree_cap", -1);
        p.transform = std::move(t);
    }
    if (j.contains("lattice")) {
        Lattice l;
        l.dim = j.at("lattice").value("dim", 1);
        l.n = j.at("lattice").value("n", 4);
        l.dx = j.at("lattice").value("dx", std::string("1"));
        p.lattice = std::move(l);
    }
    return p;
}

Problem Problem::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string Problem::to_json_text() const {
    json j;
    j["dimension"] = dimension;
    j["variables"] = variables;
    j["action"] = action;
    j["observable"] = observable;
    j["point"] = point;
    j["order"] = order;
    j["backend"] = backend == Backend::Exact ? "exact" : "float";
    if (gauge) {
        json jg;
        jg["generators"] = gauge->generators;
        if (gauge->slice_base) {
            jg["slice"]["affine"]["base"] = *gauge->slice_base;
            jg["slice"]["affine"]["directions"] = *gauge->slice_directions;
            if (gauge->slice_param_lo > -1e299)
                jg["slice"]["affine"]["param_lo"] = gauge->slice_param_lo;
            if (gauge->slice_param_hi < 1e299)
                jg["slice"]["affine"]["param_hi"] = gauge->slice_param_hi;
        } else if (gauge->level_f) {
            jg["slice"]["level_set"]["F"] = *gauge->level_f;
            jg["slice"]["level_set"]["q0"] = *gauge->level_q0;
        }
        if (gauge->weighted_f) {
            jg["weighted"]["F"] = *gauge->weighted_f;
            jg["weighted"]["h"] = gauge->weighted_h;
            jg["weighted"]["q0"] = gauge->weighted_q0;
        }
        j["gauge"] = std::move(jg);
    }
    if (morse_bott) {
        j["morse_bott"] = {{"fibration", morse_bott->fibration},
                           {"radius", morse_bott->radius},
                           {"shear", morse_bott->shear},
                           {"nodes", morse_bott->nodes}};
    }
    if (sweep) j["sweep"] = {{"grid", sweep->grid}};
    if (transform)
        j["transform"] = {{"phi", transform->phi}, {"degree_cap", transform->degree_cap}};
    if (lattice) j["lattice"] = {{"dim", lattice->dim}, {"n", lattice->n}, {"dx", lattice->dx}};
    return j.dump(2);
}

Integrand Problem::build_integrand() const {
    Polynomial s = parse_expression(action, variables, backend);
    Polynomial f = parse_expression(observable, variables, backend);
    return Integrand::plain(std::move(s), std::move(f));
}

std::vector<Coefficient> Problem::build_point() const {
    std::vector<Coefficient> pt;
    pt.reserve(point.size());
    for (const auto& t : point) pt.push_back(parse_scalar(t, {}, backend));
    if (static_cast<int>(pt.size()) != dimension) throw Error("point length differs from dimension");
    return pt;
}

std::string wick_series_json(const WickSeries& w) {
    json j;
    j["S0"] = w.s0.str();
    j["detA"] = w.det_a.str();
    j["d"] = w.dim;
    j["kmin"] = w.kmin;
    j["N"] = w.order;
    std::vector<std::string> coeffs;
    for (int k = w.kmin; k <= w.order; ++k) coeffs.push_back(w.c(k).str());
    j["coeffs"] = coeffs;
    return j.dump(2);
}

namespace {

json series_to_json(const WickSeries& w) { return json::parse(wick_series_json(w)); }

json morsebott_to_json(const MorseBottSeries& m) {
    json j;
    j["C"] = m.constant_value;
    j["fiber_dim"] = m.fiber_dim;
    j["N"] = m.order;
    j["nodes"] = m.nodes;
    j["rule"] = m.rule;
    std::vector<double> raw_re, raw_im, w_re, w_im;
    for (auto v : m.raw) {
        raw_re.push_back(v.real());
        raw_im.push_back(v.imag());
    }
    for (auto v : m.weighted) {
        w_re.push_back(v.real());
        w_im.push_back(v.imag());
    }
    j["coeffs_re"] = raw_re;
    j["coeffs_im"] = raw_im;
    j["weighted_re"] = w_re;
    j["weighted_im"] = w_im;
    return j;
}

GroupAction build_action(const Problem& p) {
    if (!p.gauge) throw Error("problem has no gauge block");
    std::vector<Generator> gens;
    for (const auto& rows : p.gauge->generators) {
        int d = static_cast<int>(rows.size());
        Matrix x(d, d, p.backend);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                x.at(i, j) = parse_scalar(rows[i][j], {}, p.backend);
        gens.push_back(Generator{std::move(x), {}});
    }
    return GroupAction(p.dimension, std::move(gens));
}

Slice build_slice(const Problem& p) {
    const auto& g = *p.gauge;
    if (g.slice_base) {
        std::vector<Coefficient> base;
        for (const auto& t : *g.slice_base) base.push_back(parse_scalar(t, {}, p.backend));
        int d = static_cast<int>(g.slice_directions->size());
        int m = static_cast<int>((*g.slice_directions)[0].size());
        Matrix dirs(d, m, p.backend);
        for (int i = 0; i < d; ++i)
            for (int a = 0; a < m; ++a)
                dirs.at(i, a) = parse_scalar((*g.slice_directions)[i][a], {}, p.backend);
        return Slice::affine(std::move(base), std::move(dirs), g.slice_param_lo,
                             g.slice_param_hi);
    }
    if (g.level_f) {
        std::vector<Polynomial> f;
        for (const auto& t : *g.level_f) f.push_back(parse_expression(t, p.variables, p.backend));
        std::vector<Coefficient> q0;
        for (const auto& t : *g.level_q0) q0.push_back(parse_scalar(t, {}, p.backend));
        return Slice::level_set(std::move(f), std::move(q0));
    }
    throw Error("gauge block has no slice");
}

WeightedGauge build_weighted(const Problem& p, int order) {
    const auto& g = *p.gauge;
    if (!g.weighted_f) throw Error("gauge block has no weighted gauge");
    std::vector<Polynomial> f;
    for (const auto& t : *g.weighted_f) f.push_back(parse_expression(t, p.variables, p.backend));
    int gdim = static_cast<int>(f.size());
    std::vector<std::string> qvars;
    for (int i = 0; i < gdim; ++i) qvars.push_back("q" + std::to_string(i + 1));
    if (gdim == 1) qvars = {"q"};
    Polynomial h = parse_expression(g.weighted_h, qvars, p.backend);
    std::vector<Coefficient> q0;
    for (const auto& t : g.weighted_q0) q0.push_back(parse_scalar(t, {}, p.backend));
    return WeightedGauge(std::move(f), std::move(h), std::move(q0), order);
}

Fibration build_fibration(const Problem& p) {
    const auto& m = *p.morse_bott;
    if (m.fibration == "radial") return Fibration::radial_circle(m.radius);
    if (m.fibration == "sheared") return Fibration::sheared_circle(m.radius, m.shear);
    throw Error("unknown fibration kind: " + m.fibration);
}

}  // namespace

RunResult run_command(const std::string& command, const Problem& problem_in,
                      const RunOptions& options) {
    Problem problem = problem_in;
    if (options.order) problem.order = *options.order;
    if (options.backend) {
        if (*options.backend == "exact") problem.backend = Backend::Exact;
        else if (*options.backend == "float") problem.backend = Backend::Float;
        else throw Error("backend must be exact or float");
    }
    if (options.nodes && problem.morse_bott) problem.morse_bott->nodes = *options.nodes;
    if (options.grid) {
        if (!problem.sweep) problem.sweep = Problem::Sweep{};
        problem.sweep->grid = *options.grid;
    }

    RunResult out;
    json j;
    j["command"] = command;
    j["order"] = problem.order;

    if (command == "expand") {
        WickSeries w = wick_expand(problem.build_integrand(), problem.build_point(),
                                   problem.order);
        j["series"] = series_to_json(w);
    } else if (command == "transform") {
        if (!problem.transform) throw Error("problem has no transform block");
        std::vector<Polynomial> comps;
        for (const auto& t : problem.transform->phi)
            comps.push_back(parse_expression(t, problem.variables, problem.backend));
        FormalDiffeo phi(std::move(comps));
        Integrand moved = transform_integrand(problem.build_integrand(), phi,
                                              problem.transform->degree_cap);
        j["action"] = moved.action.str(problem.variables);
        j["observable"] = moved.observable.at(0).str(problem.variables);
        WickSeries w = wick_expand(moved, problem.build_point(), problem.order);
        j["series"] = series_to_json(w);
    } else if (command == "check-ibp") {
        Integrand in = problem.build_integrand();
        std::vector<Coefficient> x0 = problem.build_point();
        bool ok = true;
        json per_index = json::array();
        for (int i = 0; i < problem.dimension; ++i) {
            WickSeries w = wick_expand(total_derivative(in, i), x0, problem.order);
            per_index.push_back(series_to_json(w));
            ok = ok && w.all_zero();
        }
        j["series_per_index"] = per_index;
        j["all_zero"] = ok;
        if (!ok) out.exit_code = 2;
    } else if (command == "morse-bott") {
        if (!problem.morse_bott) throw Error("problem has no morse_bott block");
        Fibration fib = build_fibration(problem);
        MorseBottSeries m = wick_expand_morsebott(problem.build_integrand(), fib,
                                                  problem.order, problem.morse_bott->nodes,
                                                  options.tolerance);
        j["series"] = morsebott_to_json(m);
    } else if (command == "gauge-slice") {
        GroupAction action = build_action(problem);
        Slice slice = build_slice(problem);
        WickSeries w = gauge_fixed_expand_slice(problem.build_integrand(), action, slice,
                                                problem.build_point(), problem.order);
        j["series"] = series_to_json(w);
    } else if (command == "gauge-weighted") {
        GroupAction action = build_action(problem);
        WeightedGauge wg = build_weighted(problem, problem.order);
        Integrand weighted =
            weighted_fp_integrand(problem.build_integrand(), action, wg);
        WickSeries w = wick_expand(weighted, problem.build_point(), problem.order);
        j["series"] = series_to_json(w);
        j["det_hess_h"] = wg.det_hess_h().str();
        j["h_q0"] = wg.h_at_q0().str();
        j["algebra_dim"] = wg.target_dim();
        if (problem.gauge->slice_base || problem.gauge->level_f) {
            Slice slice = build_slice(problem);
            bool agree = check_weighted_equals_slice(problem.build_integrand(), action, slice,
                                                     wg, problem.build_point(), problem.order);
            j["agrees_with_slice"] = agree;
            if (!agree) out.exit_code = 2;
        }
    } else if (command == "fp-volume") {
        GroupAction action = build_action(problem);
        Slice slice = build_slice(problem);
        double hbar = problem.sweep && !problem.sweep->grid.empty()
                          ? problem.sweep->grid.front()
                          : 0.1;
        FpVolumeReport rep = check_fp_volume_numeric(problem.build_integrand(), action, slice,
                                                     hbar, options.tolerance);
        j["hbar"] = hbar;
        j["total_integral_re"] = rep.total_integral.real();
        j["gauge_fixed_integral_re"] = rep.gauge_fixed_integral.real();
        j["rel_error"] = rep.rel_error;
        j["passed"] = rep.passed;
        if (!rep.passed) out.exit_code = 2;
    } else if (command == "asymptotics") {
        if (!problem.sweep) throw Error("problem has no sweep block");
        Integrand in = problem.build_integrand();
        std::vector<Coefficient> x0 = problem.build_point();
        WickSeries w = wick_expand(in, x0, problem.order);
        Integrand fin(in.action.to_float(), in.observable.to_float());
        AsymptoticsReport rep = asymptotics_sweep(fin, x0, w, problem.sweep->grid,
                                                  problem.order, options.tolerance);
        j["slopes"] = rep.slopes;
        j["series"] = series_to_json(w);
        out.report_csv = rep.to_csv();
    } else if (command == "lattice-demo") {
        Problem::Lattice lat = problem.lattice.value_or(Problem::Lattice{});
        LatticeSpec spec;
        spec.dim = lat.dim;
        spec.sites_per_side = lat.n;
        spec.spacing = parse_scalar(lat.dx, {}, problem.backend);
        LatticeReport rep = run_cancellation_demo(spec, problem.order);
        std::vector<std::string> totals;
        for (const auto& c : rep.totals) totals.push_back(c.str());
        j["totals"] = totals;
        j["observable_diagram"] = rep.observable_diagram.str();
        j["vertex_diagram"] = rep.vertex_diagram.str();
        j["naive_observable_diagram"] = rep.naive_observable_diagram.str();
        j["naive_total"] = rep.naive_total.str();
        j["pseudo_det"] = rep.pseudo_det.str();
        j["cancels"] = rep.cancels();
        if (!rep.cancels()) out.exit_code = 2;
    } else {
        throw Error("unknown command: " + command);
    }

    out.report_json = j.dump(2);
    return out;
}

}  // namespace wicklab
