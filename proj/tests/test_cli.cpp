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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "test_util.hpp"
#include "wicklab/problem.hpp"

using namespace wicklab;
using testutil::parse1;
using testutil::Rng;

TEST_CASE("parse_expression: worked examples") {
    Polynomial s = parse_expression("1/2*x^2 + x^4", {"x"});
    CHECK(s.coeff({2}) == Coefficient::exact(1, 2));
    CHECK(s.coeff({4}) == Coefficient::exact(1));

    Polynomial f = parse_expression("1 + 3*x^2", {"x"});
    CHECK(f.coeff({0}) == Coefficient::exact(1));
    CHECK(f.coeff({2}) == Coefficient::exact(3));

    CHECK_THROWS_AS(parse_expression("x^(1/2)", {"x"}), NonIntegerExponent);
    CHECK_THROWS_AS(parse_expression("x + z", {"x", "y"}), UnknownVariable);
    CHECK_THROWS_AS(parse_expression("x + ", {"x"}), SyntaxError);
}

TEST_CASE("parse_expression: decimals, i, and precedence") {
    CHECK(parse_expression("0.25*x", {"x"}) == parse1("1/4*x"));
    Polynomial z = parse_expression("2*i*x", {"x"});
    CHECK(z.coeff({1}) == Coefficient::exact(mpq_class(0), mpq_class(2)));
    CHECK(parse_expression("-x^2 + 2*(x + 1)^2", {"x"}) == parse1("x^2 + 4*x + 2"));
    CHECK(parse_expression("2^3", {}).constant_term() == Coefficient::exact(8));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_expression("x +\n  *2", {"x"});
        CHECK(false);
    } catch (const SyntaxError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
}

TEST_CASE("polynomial text form round-trips through the parser") {
    Rng rng;
    for (int t = 0; t < 40; ++t) {
        int d = rng.uniform(1, 3);
        Polynomial p = rng.polynomial(d, 5, 5);
        std::vector<std::string> names;
        for (int i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
        Polynomial back = parse_expression(p.str(names), names);
        CHECK(back == p);
    }
    // complex coefficients are parenthesized in the text form
    for (int t = 0; t < 15; ++t) {
        Polynomial p(1, Backend::Exact);
        for (int k = 0; k < 3; ++k)
            p.add_term({rng.uniform(0, 4)},
                       Coefficient::exact(rng.rational().exact_re(),
                                          rng.rational().exact_re()));
        CHECK(parse_expression(p.str({"x"}), {"x"}) == p);
    }
}

TEST_CASE("problem files round-trip") {
    const std::string text = R"({
        "dimension": 1,
        "variables": ["x"],
        "action": "1/2*x^2 + x^4",
        "observable": "1",
        "point": ["0"],
        "order": 2,
        "backend": "exact",
        "sweep": {"grid": [0.02, 0.01]}
    })";
    Problem p = Problem::from_json_text(text);
    Problem q = Problem::from_json_text(p.to_json_text());
    CHECK(p.to_json_text() == q.to_json_text());
    CHECK(q.action == "1/2*x^2 + x^4");
    CHECK(q.sweep.has_value());
}

TEST_CASE("expand command reproduces the quartic series") {
    Problem p;
    p.dimension = 1;
    p.variables = {"x"};
    p.action = "1/2*x^2 + x^4";
    p.point = {"0"};
    p.order = 2;
    RunResult r = run_command("expand", p, {});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.report_json);
    CHECK(j["series"]["coeffs"] == nlohmann::json({"1", "-3", "105/2"}));
    CHECK(j["series"]["d"] == 1);
    CHECK(j["series"]["kmin"] == 0);
}

TEST_CASE("transform command pulls back the Gaussian") {
    Problem p;
    p.dimension = 1;
    p.variables = {"x"};
    p.action = "1/2*x^2";
    p.point = {"0"};
    p.order = 3;
    p.transform = Problem::Transform{{"x + x^3"}, -1};
    RunResult r = run_command("transform", p, {});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.report_json);
    CHECK(j["observable"] == "1 + 3*x^2");
    auto coeffs = j["series"]["coeffs"];
    CHECK(coeffs[0] == "1");
    for (std::size_t k = 1; k < coeffs.size(); ++k) CHECK(coeffs[k] == "0");
}

TEST_CASE("check-ibp exits zero on total-derivative integrands") {
    Problem p;
    p.dimension = 1;
    p.variables = {"x"};
    p.action = "1/2*x^2 + x^4";
    p.observable = "x^2";
    p.point = {"0"};
    p.order = 3;
    RunResult r = run_command("check-ibp", p, {});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.report_json);
    CHECK(j["all_zero"] == true);
}

TEST_CASE("lattice-demo command reports exact zeros") {
    Problem p;
    p.order = 1;
    p.lattice = Problem::Lattice{1, 4, "1"};
    RunResult r = run_command("lattice-demo", p, {});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.report_json);
    CHECK(j["totals"] == nlohmann::json({"0"}));
    CHECK(j["cancels"] == true);
}

TEST_CASE("asymptotics command emits CSV alongside the summary") {
    Problem p;
    p.dimension = 1;
    p.variables = {"x"};
    p.action = "1/2*x^2 + x^4";
    p.point = {"0"};
    p.order = 1;
    p.sweep = Problem::Sweep{{0.02, 0.01, 0.005}};
    RunOptions opts;
    opts.tolerance = 1e-10;
    RunResult r = run_command("asymptotics", p, opts);
    CHECK(r.exit_code == 0);
    CHECK(r.report_csv.rfind("hbar,", 0) == 0);
    // one header plus one row per grid point
    CHECK(std::count(r.report_csv.begin(), r.report_csv.end(), '\n') == 4);
    auto j = nlohmann::json::parse(r.report_json);
    CHECK(j["slopes"].size() == 2);
}

TEST_CASE("gauge commands run from a problem description") {
    Problem p;
    p.dimension = 2;
    p.variables = {"x", "y"};
    p.action = "1/4*(x^2 + y^2 - 1)^2";
    p.point = {"1", "0"};
    p.order = 3;
    Problem::Gauge g;
    g.generators = {{{"0", "-1"}, {"1", "0"}}};
    g.slice_base = std::vector<std::string>{"1", "0"};
    g.slice_directions = std::vector<std::vector<std::string>>{{"1"}, {"0"}};
    g.slice_param_lo = -1.0;
    g.weighted_f = std::vector<std::string>{"y"};
    g.weighted_h = "1/2*q^2";
    g.weighted_q0 = {"0"};
    p.gauge = g;

    RunResult slice = run_command("gauge-slice", p, {});
    CHECK(slice.exit_code == 0);
    auto js = nlohmann::json::parse(slice.report_json);
    CHECK(js["series"]["coeffs"][0] == "1");

    RunResult weighted = run_command("gauge-weighted", p, {});
    CHECK(weighted.exit_code == 0);
    auto jw = nlohmann::json::parse(weighted.report_json);
    CHECK(jw["agrees_with_slice"] == true);

    RunOptions fp_opts;
    fp_opts.tolerance = 1e-8;
    fp_opts.grid = std::vector<double>{0.1};
    RunResult vol = run_command("fp-volume", p, fp_opts);
    CHECK(vol.exit_code == 0);
}

TEST_CASE("morse-bott command integrates the Mexican hat") {
    Problem p;
    p.dimension = 2;
    p.variables = {"x", "y"};
    p.action = "1/4*(x^2 + y^2 - 1)^2";
    p.observable = "1";
    p.order = 1;
    p.morse_bott = Problem::MorseBott{"radial", 1.0, 0.5, 64};
    RunResult r = run_command("morse-bott", p, {});
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.report_json);
    CHECK(j["series"]["nodes"] == 64);
    CHECK(j["series"]["rule"] == "trapezoid");
    double c0 = j["series"]["coeffs_re"][0].get<double>();
    CHECK(c0 == doctest::Approx(2.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("unknown commands are rejected") {
    Problem p;
    CHECK_THROWS_AS(run_command("frobnicate", p, {}), Error);
}
