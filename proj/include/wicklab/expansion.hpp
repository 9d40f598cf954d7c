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

#ifndef WICKLAB_EXPANSION_HPP
#define WICKLAB_EXPANSION_HPP

#include "wicklab/series.hpp"
#include "wicklab/wick.hpp"

namespace wicklab {

/// The data of an integral f(x) e^{-S(x)/hbar} d^dx: an hbar-independent
/// action polynomial and a graded observable. Density factors are folded
/// into the observable. The observable may carry integer hbar-Laurent
/// factors (grade -2 entries and the like).
struct Integrand {
    Polynomial action;
    HbarGradedSeries observable;

    Integrand(Polynomial s, HbarGradedSeries f);
    /// Plain polynomial observable at grade 0, exact to all orders.
    static Integrand plain(Polynomial s, Polynomial f);
    /// Observable identically one.
    static Integrand unit(Polynomial s);

    int dim() const { return action.dim(); }
    Backend backend() const { return action.backend(); }
};

/// Output of the Wick expansion about a nondegenerate critical point. The
/// prefactor ((2 pi hbar)^d / det A)^{1/2} e^{-S0/hbar} is kept symbolic as
/// the triple (S0, detA, d); no square-root branch is ever chosen except in
/// explicitly numeric evaluation, which uses the principal branch.
struct WickSeries {
    Coefficient s0;
    Coefficient det_a;
    int dim = 0;
    int kmin = 0;   // lowest stored integer power of hbar (may be negative)
    int order = 0;  // N: coefficients are valid for kmin <= k <= N
    std::vector<Coefficient> coeffs;

    Coefficient c(int k) const;
    bool all_zero() const;
    /// Coefficient lists agree entry-by-entry over the common valid range.
    static bool coefficients_equal(const WickSeries& a, const WickSeries& b);

    std::complex<double> prefactor_numeric(std::complex<double> hbar) const;
    /// Prefactor times the partial sum through hbar^through_order.
    std::complex<double> evaluate_numeric(std::complex<double> hbar, int through_order) const;
};

struct SplitAction {
    Coefficient s0;
    QuadraticForm hessian;
    Polynomial sbar;           // in the original coordinates
    Polynomial sbar_centered;  // same data as a polynomial in u = x - x0
};

/// Splits S(x) = S0 + (1/2) A(x-x0, x-x0) - Sbar(x) with Sbar = O(|x-x0|^3),
/// so that e^{-S/hbar} = e^{-S0/hbar} e^{-A/2hbar} e^{+Sbar/hbar}. Throws
/// NotCritical when the gradient at x0 does not vanish (exactly on the exact
/// backend, to `tol` on floats) and SingularHessian for a degenerate Hessian.
SplitAction split_action(const Polynomial& s, const std::vector<Coefficient>& x0,
                         double tol = 1e-9);

/// Newton iteration on grad S from `guess`; float backend only.
std::vector<double> find_critical_point(const Polynomial& s, std::vector<double> guess,
                                        double tol = 1e-12, int max_iter = 100,
                                        double cond_threshold = 1e8);

/// The Wick expansion of the integrand about x0 through order hbar^N.
WickSeries wick_expand(const Integrand& integrand, const std::vector<Coefficient>& x0, int N,
                       const WickOptions& opts = {});

/// Applies the Wick operator grade by grade to an already-graded integrand
/// series (the Taylor data of f e^{+Sbar/hbar} under x -> x0 + hbar^{1/2} u),
/// contracting with an arbitrary propagator. This is the common core of
/// wick_expand and of the zero-mode lattice demonstration.
WickSeries wick_contract_graded(const HbarGradedSeries& graded, const Propagator& g,
                                const Coefficient& s0, const Coefficient& det_a, int dim,
                                int N, const WickOptions& opts = {});

/// A formal change of coordinates given by polynomial components with
/// invertible linear part.
class FormalDiffeo {
  public:
    explicit FormalDiffeo(std::vector<Polynomial> components);
    static FormalDiffeo identity(int dim, Backend b);

    int dim() const { return static_cast<int>(components_.size()); }
    Backend backend() const { return components_.front().backend(); }
    const std::vector<Polynomial>& components() const { return components_; }
    const Matrix& linear_part() const { return linear_; }

    std::vector<Coefficient> apply(const std::vector<Coefficient>& x) const;
    /// det D(Phi)(x) as an exact polynomial.
    Polynomial jacobian_det() const;
    /// Jacobian matrix evaluated at a point.
    Matrix jacobian_at(const std::vector<Coefficient>& x) const;
    /// Compositional inverse as a formal power series truncated at the given
    /// total degree; exact through that degree.
    FormalDiffeo inverse_series(int degree) const;

  private:
    std::vector<Polynomial> components_;
    Matrix linear_;
};

/// Pullback of the integrand: action S(Phi(x)), observable
/// f(Phi(x)) det D(Phi)(x). degree_cap < 0 keeps the exact composition.
Integrand transform_integrand(const Integrand& integrand, const FormalDiffeo& phi,
                              int degree_cap = -1);

/// The integrand of d_i [ f e^{-S/hbar} ]: same action, observable
/// hbar^{-1} (hbar d_i f - f d_i S).
Integrand total_derivative(const Integrand& integrand, int var);

/// Finite-dimensional Schwinger-Dyson check: the expansion of the total
/// derivative vanishes identically through order N.
bool check_schwinger_dyson(const Integrand& integrand, int var,
                           const std::vector<Coefficient>& x0, int N,
                           const WickOptions& opts = {});

/// sum_i d_i V^i, the divergence factor of a vector field.
Polynomial divergence(const std::vector<Polynomial>& v);

struct AuxiliaryElimination {
    WickSeries second_order;  // expansion of |Tx + V(x)|^2 / 2c in d variables
    WickSeries first_order;   // expansion of the first-order action in 2d variables
};

/// Builds the second-order action |Tx + V(x)|^2/2c and its first-order
/// formulation -(c<y,y>/2 + <Tx + V(x), y>), Wick expands both about the
/// origin, and returns both series. Their coefficient lists agree entrywise;
/// the differing normalization lives in the stored prefactor triples.
AuxiliaryElimination eliminate_auxiliary(const Matrix& t, const std::vector<Polynomial>& v,
                                         const Coefficient& c, int N,
                                         const WickOptions& opts = {});

}  // namespace wicklab

#endif
