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

#ifndef WICKLAB_MORSEBOTT_HPP
#define WICKLAB_MORSEBOTT_HPP

#include <functional>

#include "wicklab/expansion.hpp"

namespace wicklab {

/// Adapted chart attached to one base point of a critical manifold: the
/// fiber through gamma(theta) embedded as polynomials in the fiber
/// variables, together with the theta-velocity of the chart family (both on
/// the float backend; trigonometric base data enters through evaluated
/// coefficients). The chart Jacobian det[theta_tangent | d embed/dv] carries
/// the volume factor, so no separate speed factor is applied downstream.
struct FiberChart {
    std::vector<Polynomial> embed;          // d polys in (d - 1) fiber vars
    std::vector<Polynomial> theta_tangent;  // d polys in the fiber vars
};

/// Fibration of a tubular neighborhood over a one-dimensional critical
/// manifold Z (circle or interval), sampled by a callable chart family.
class Fibration {
  public:
    using ChartFn = std::function<FiberChart(double)>;

    static Fibration make(int dim, double theta_lo, double theta_hi, bool periodic,
                          ChartFn chart);
    /// Polar fibers through the circle |x| = radius in the plane.
    static Fibration radial_circle(double radius);
    /// Fibers through the same circle tilted by `shear` along the tangent.
    static Fibration sheared_circle(double radius, double shear);
    /// Straight fibers orthogonal to the coordinate axis `base_var`.
    static Fibration axis_line(int dim, int base_var, double lo, double hi);

    /// The image fibration under a polynomial diffeomorphism: charts become
    /// phi o chart with the velocity pushed forward by D(phi).
    Fibration precomposed(const FormalDiffeo& phi) const;

    int dim() const { return dim_; }
    int fiber_dim() const { return dim_ - 1; }
    double theta_lo() const { return lo_; }
    double theta_hi() const { return hi_; }
    bool periodic() const { return periodic_; }
    FiberChart chart(double theta) const { return chart_(theta); }
    std::vector<double> base_point(double theta) const;

  private:
    Fibration() = default;
    int dim_ = 0;
    double lo_ = 0.0, hi_ = 0.0;
    bool periodic_ = false;
    ChartFn chart_;
};

/// Result of integrating the fiberwise Wick data over Z. `raw[k]` is the
/// plain base integral of the grade-k fiber coefficient; `weighted[k]`
/// additionally carries the pointwise fiber prefactor (2 pi / det A)^{m/2},
/// so that e^{-C/hbar} hbar^{m/2} sum_k weighted[k] hbar^k evaluates the
/// series numerically (m = fiber dimension).
struct MorseBottSeries {
    double constant_value = 0.0;  // C, the value of S on Z
    int fiber_dim = 0;
    int order = 0;
    std::vector<std::complex<double>> raw;
    std::vector<std::complex<double>> weighted;
    int nodes = 0;
    std::string rule;

    std::complex<double> evaluate_numeric(std::complex<double> hbar, int through_order) const;
};

/// Wick expansion in the fiber variables only, base frozen at gamma(theta).
WickSeries fiber_wick_expand(const Integrand& integrand, const Fibration& fib, double theta,
                             int N, double tol = 1e-9);

/// Samples fiber expansions at quadrature nodes and integrates each grade
/// over Z (trapezoid on periodic bases, Gauss-Legendre on intervals).
MorseBottSeries wick_expand_morsebott(const Integrand& integrand, const Fibration& fib, int N,
                                      int nodes = 64, double tol = 1e-9);

/// Grade-by-grade agreement of two fibrations for the same Z within tol.
bool check_fibration_independence(const Integrand& integrand, const Fibration& fib_a,
                                  const Fibration& fib_b, int N, int nodes = 64,
                                  double tol = 1e-9);

/// Gauss-Legendre nodes and weights on [lo, hi].
void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace wicklab

#endif
