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

#ifndef WICKLAB_LATTICE_HPP
#define WICKLAB_LATTICE_HPP

#include "wicklab/expansion.hpp"

namespace wicklab {

/// Periodic box of lattice sites in one or two spacetime dimensions.
struct LatticeSpec {
    int dim = 1;  // 1 or 2
    int sites_per_side = 4;
    Coefficient spacing = Coefficient::exact(1);
    bool periodic = true;

    int total_sites() const;
};

/// Quadratic-form matrix Q of the pairing (phi, Delta phi) under the lattice
/// inner product (f, g) = sum_i (dx)^dim f_i g_i: the second-difference
/// operator scaled by (dx)^{dim - 2}.
Matrix lattice_laplacian(const LatticeSpec& spec);

/// Exact generalized inverse G of a PSD quadratic form whose kernel is the
/// constants: G Q = Q G = I - J/n (the mean-zero projector), G symmetric.
Propagator zero_mode_propagator(const Matrix& q);

/// Exact pseudo-determinant (product of the nonzero eigenvalues).
Coefficient pseudo_determinant(const Matrix& q);

struct LatticeReport {
    LatticeSpec spec;
    int order = 1;
    /// c_k of the transformed integrand for k = 1..order; all exactly zero.
    std::vector<Coefficient> totals;
    /// Order-hbar diagram split: the Jacobian-observable contraction and the
    /// quartic-vertex contraction.
    Coefficient observable_diagram;
    Coefficient vertex_diagram;
    /// The same two diagrams with the zero mode ignored in the Jacobian
    /// (the literal product observable); their sum is the nonzero zero-mode
    /// remnant 3 tr(G)/n, reported for comparison.
    Coefficient naive_observable_diagram;
    Coefficient naive_total;
    Coefficient pseudo_det;

    bool cancels() const;
};

/// The change-of-variables cancellation demonstration: transforms the free
/// lattice action by phi -> phi + phi^3, Wick-contracts with the zero-mode
/// propagator, and verifies that every order through `order` vanishes
/// exactly. The Jacobian observable is the determinant of the substitution
/// restricted to the mean-zero field space, which is the zero-mode-consistent
/// reading of the product-of-sites Jacobian.
LatticeReport run_cancellation_demo(const LatticeSpec& spec, int order,
                                    const WickOptions& opts = {});

/// Same demonstration with the propagator shifted along the kernel by c J;
/// the totals are unchanged (the interaction is built from the Laplacian,
/// which annihilates constants).
LatticeReport run_cancellation_demo_shifted(const LatticeSpec& spec, int order,
                                            const Coefficient& kernel_shift,
                                            const WickOptions& opts = {});

}  // namespace wicklab

#endif
