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

#ifndef WICKLAB_ORACLE_HPP
#define WICKLAB_ORACLE_HPP

#include <complex>
#include <optional>

#include "wicklab/expansion.hpp"

namespace wicklab {

struct Box {
    std::vector<double> lo, hi;
    int dim() const { return static_cast<int>(lo.size()); }
};

struct IntegralResult {
    std::complex<double> value;
    double error_estimate = 0.0;
};

/// Numeric integration of f e^{-S/hbar} over a box or (box = nullopt) over
/// R^d with the box auto-grown until the boundary integrand is negligible.
/// d <= 3. Nested 1D adaptive Simpson; `tol` is a relative target.
IntegralResult integrate_numeric(const Integrand& integrand, std::complex<double> hbar,
                                 std::optional<Box> domain, double tol);

/// 1D adaptive Simpson on a complex-valued function; absolute tolerance.
IntegralResult integrate_1d(const std::function<std::complex<double>(double)>& f, double lo,
                            double hi, double abs_tol, int min_depth = 6);

/// Verification data that a Wick series is asymptotic: remainders of partial
/// sums on a decreasing hbar grid and fitted log-log slopes per order.
struct AsymptoticsReport {
    std::vector<double> grid;                         // strictly decreasing
    std::vector<std::complex<double>> values;         // I(hbar)
    std::vector<std::vector<std::complex<double>>> partial_sums;  // [order][grid]
    std::vector<std::vector<double>> remainders_abs;              // [order][grid]
    std::vector<std::vector<double>> remainders_rel;  // |remainder/prefactor|
    std::vector<double> slopes;                       // fitted per order
    int max_order = 0;

    std::string to_csv() const;
};

/// Integrates I(hbar) over the grid, subtracts prefactored partial sums of W
/// through each order n <= N, and fits log|remainder/prefactor| vs log hbar.
AsymptoticsReport asymptotics_sweep(const Integrand& integrand,
                                    const std::vector<Coefficient>& x0, const WickSeries& w,
                                    const std::vector<double>& grid, int N,
                                    double tol = 1e-12);

struct OscillatoryResult {
    std::complex<double> value;
    double error_estimate = 0.0;
};

/// Regulated 1D oscillatory integral at hbar = i t: evaluates
/// int psi(eps x) f e^{-S/hbar} e^{-delta x^2} dx on geometric delta and eps
/// sequences and extrapolates both regulators to zero.
OscillatoryResult oscillatory_integrate_1d(const Integrand& integrand, double t, double delta,
                                           double eps, double tol = 1e-9);

}  // namespace wicklab

#endif
