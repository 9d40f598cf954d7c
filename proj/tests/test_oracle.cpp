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

#include <cmath>

#include "test_util.hpp"
#include "wicklab/oracle.hpp"

using namespace wicklab;
using testutil::parse1;
using testutil::parse2;

namespace {

std::vector<Coefficient> origin(int d) {
    return std::vector<Coefficient>(static_cast<std::size_t>(d), Coefficient::exact(0));
}

}  // namespace

TEST_CASE("integrate_numeric: Gaussian closed form") {
    Integrand in = Integrand::unit(parse1("1/2*x^2"));
    auto r = integrate_numeric(in, 0.1, std::nullopt, 1e-11);
    CHECK(std::abs(r.value.real() - std::sqrt(2.0 * M_PI * 0.1)) < 1e-9);
    CHECK(std::abs(r.value.imag()) < 1e-12);
}

TEST_CASE("integrate_numeric: Mexican hat matches the polar reduction") {
    Integrand in = Integrand::unit(parse_expression("1/4*(x^2 + y^2 - 1)^2", {"x", "y"}));
    auto full = integrate_numeric(in, 0.05, std::nullopt, 1e-10);
    CompiledPoly s1(parse1("1/4*(x^2 - 1)^2").to_float());
    auto radial = integrate_1d(
        [&](double w) {
            std::span<const double> xs(&w, 1);
            return std::complex<double>(
                w * std::exp(-s1.eval(xs).real() / 0.05), 0.0);
        },
        0.0, 4.0, 1e-13, 8);
    double oracle = 2.0 * M_PI * radial.value.real();
    CHECK(std::abs(full.value.real() - oracle) / oracle < 1e-8);
}

TEST_CASE("integrate_numeric: quartic model against a 1D reference") {
    Integrand in = Integrand::unit(parse1("1/2*x^2 + x^4"));
    auto r = integrate_numeric(in, 0.01, std::nullopt, 1e-11);
    CompiledPoly s(parse1("1/2*x^2 + x^4").to_float());
    auto ref = integrate_1d(
        [&](double x) {
            std::span<const double> xs(&x, 1);
            return std::exp(std::complex<double>(-s.eval(xs).real() / 0.01, 0.0));
        },
        -1.0, 1.0, 1e-14, 9);
    CHECK(std::abs(r.value.real() - ref.value.real()) < 1e-10);
}

TEST_CASE("integrate_numeric: refinement stability") {
    Integrand in = Integrand::unit(parse1("1/2*x^2 + x^4"));
    auto coarse = integrate_numeric(in, 0.05, std::nullopt, 1e-8);
    auto fine = integrate_numeric(in, 0.05, std::nullopt, 5e-9);
    CHECK(std::abs(coarse.value - fine.value) <=
          std::max(coarse.error_estimate, 1e-13 * std::abs(coarse.value.real())));
}

TEST_CASE("integrate_numeric: complex hbar with positive real part") {
    Integrand in = Integrand::unit(parse1("1/2*x^2"));
    std::complex<double> hbar(0.1, 0.05);
    auto r = integrate_numeric(in, hbar, std::nullopt, 1e-10);
    std::complex<double> exact = std::sqrt(2.0 * M_PI * hbar);
    CHECK(std::abs(r.value - exact) < 1e-9);
}

TEST_CASE("integrate_numeric rejects non-decaying integrands") {
    Integrand in = Integrand::unit(parse1("x"));  // e^{-x/h} blows up leftward
    CHECK_THROWS_AS(integrate_numeric(in, 0.1, std::nullopt, 1e-9), NoDecay);
}

TEST_CASE("asymptotics_sweep: quartic model has slope 2 after order one") {
    Integrand in = Integrand::unit(parse1("1/2*x^2 + x^4"));
    WickSeries w = wick_expand(in, origin(1), 2);
    AsymptoticsReport rep =
        asymptotics_sweep(in, origin(1), w, {0.02, 0.01, 0.005, 0.0025}, 1, 1e-12);
    CHECK(rep.slopes[0] > 0.8);
    CHECK(rep.slopes[1] == doctest::Approx(2.0).epsilon(0.11));
    // magnitude at the smallest grid point is consistent with c_2 = 105/2
    double rho = rep.remainders_rel[1].back() / (0.0025 * 0.0025);
    CHECK(rho == doctest::Approx(52.5).epsilon(0.15));
}

TEST_CASE("asymptotics_sweep: pure Gaussian remainders are at noise level") {
    Integrand in = Integrand::unit(parse1("1/2*x^2"));
    WickSeries w = wick_expand(in, origin(1), 2);
    AsymptoticsReport rep = asymptotics_sweep(in, origin(1), w, {0.04, 0.02, 0.01}, 2, 1e-12);
    for (int n = 0; n <= 2; ++n)
        for (double rel : rep.remainders_rel[n]) CHECK(rel < 1e-10);
}

TEST_CASE("asymptotics_sweep: cubic-plus-quartic perturbation") {
    Integrand in = Integrand::unit(parse1("1/2*x^2 + x^3 + x^4"));
    WickSeries w = wick_expand(in, origin(1), 2);
    // the c_3/c_2 ratio for this action is large, so the clean quadratic
    // regime only opens up below hbar ~ 1e-3
    AsymptoticsReport rep = asymptotics_sweep(in, origin(1), w,
                                              {0.0004, 0.0002, 0.0001, 0.00005}, 1, 1e-12);
    CHECK(rep.slopes[1] == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("multi-critical sum: symmetric double well") {
    // S = (x^2-1)^2/4 has minima at +-1; the sum of the two expansions is
    // asymptotic to the full integral.
    Polynomial s = parse1("1/4*(x^2 - 1)^2");
    Integrand in = Integrand::unit(s);
    WickSeries wp = wick_expand(in, {Coefficient::exact(1)}, 1);
    WickSeries wm = wick_expand(in, {Coefficient::exact(-1)}, 1);
    CHECK(wp.c(0) == wm.c(0));
    CHECK(wp.c(1) == wm.c(1));
    CHECK(wp.c(1) == Coefficient::exact(3, 4));  // desk-checked by hand pairing

    std::vector<double> grid{0.02, 0.01, 0.005};
    std::vector<double> logh, logr;
    for (double h : grid) {
        auto r = integrate_numeric(in, h, std::nullopt, 1e-12);
        std::complex<double> sum =
            wp.evaluate_numeric(h, 1) + wm.evaluate_numeric(h, 1);
        double pref = std::abs(wp.prefactor_numeric(h));
        logh.push_back(std::log(h));
        logr.push_back(std::log(std::abs(r.value - sum) / pref));
    }
    double slope = (logr.back() - logr.front()) / (logh.back() - logh.front());
    CHECK(slope > 1.8);
}

TEST_CASE("oscillatory integral: Fresnel reference") {
    Integrand in = Integrand::unit(parse1("1/2*x^2"));
    OscillatoryResult r = oscillatory_integrate_1d(in, 0.1, 0.4, 0.2, 1e-8);
    std::complex<double> fresnel = std::sqrt(std::complex<double>(0.0, 2.0 * M_PI * 0.1));
    CHECK(std::abs(r.value - fresnel) / std::abs(fresnel) < 1e-4);
}

TEST_CASE("oscillatory integral: zero observable") {
    Integrand in = Integrand::plain(parse1("1/2*x^2"), Polynomial::zero(1, Backend::Exact));
    OscillatoryResult r = oscillatory_integrate_1d(in, 0.1, 0.4, 0.2, 1e-8);
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("oscillatory integral: stationary tails are rejected") {
    // S = 0 has S' identically zero; the regulated values diverge as the
    // cutoff is removed.
    Integrand in = Integrand::unit(Polynomial::zero(1, Backend::Exact));
    CHECK_THROWS_AS(oscillatory_integrate_1d(in, 0.1, 0.4, 0.2, 1e-8),
                    ExtrapolationUnstable);
}
