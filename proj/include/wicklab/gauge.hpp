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

#ifndef WICKLAB_GAUGE_HPP
#define WICKLAB_GAUGE_HPP

#include <optional>

#include "wicklab/expansion.hpp"

namespace wicklab {

/// Affine infinitesimal generator x -> X x + b. Linear volume preservation
/// requires X traceless.
struct Generator {
    Matrix x;
    std::vector<Coefficient> offset;
};

/// Lie algebra of linear (affine) volume-preserving generators, declared
/// orthonormal with respect to the chosen volume on the algebra. Under this
/// normalization Vol(SO(2)) = 2 pi per unit rotation generator.
class GroupAction {
  public:
    GroupAction(int dim, std::vector<Generator> generators);
    /// The rotation action on the plane.
    static GroupAction so2();

    int dim() const { return dim_; }
    int algebra_dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<Generator>& generators() const { return gens_; }

    /// Exact Lie-derivative test: grad(p) . iota_x vanishes identically for
    /// every generator (exact backend), or at sampled points (float).
    bool leaves_invariant(const Polynomial& p) const;
    void require_invariant(const Integrand& integrand) const;

  private:
    int dim_;
    std::vector<Generator> gens_;
};

/// Columns iota_x(X_a) = X_a x + b_a of the infinitesimal action at x.
Matrix orbit_map(const GroupAction& action, const std::vector<Coefficient>& x);

/// Gauge slice: an affine submanifold (base point plus spanning directions,
/// with optional parameter bounds for honest integration) or a polynomial
/// level set F = q0. Affine level sets convert to the affine description.
class Slice {
  public:
    static Slice affine(std::vector<Coefficient> base, Matrix directions,
                        double param_lo = -1e300, double param_hi = 1e300);
    static Slice level_set(std::vector<Polynomial> f, std::vector<Coefficient> q0);

    bool is_affine() const { return directions_.has_value(); }
    int dim() const;
    int slice_dim() const;
    const std::vector<Coefficient>& base() const { return base_; }
    const Matrix& directions() const;
    const std::vector<Polynomial>& level_f() const { return f_; }
    const std::vector<Coefficient>& q0() const { return q0_; }
    double param_lo() const { return lo_; }
    double param_hi() const { return hi_; }

    bool contains(const std::vector<Coefficient>& w, double tol = 1e-9) const;
    /// Orthogonal projector onto the normal space at w (Euclidean metric).
    Matrix normal_projector(const std::vector<Coefficient>& w) const;
    /// Affine parameterization w(s) = base + D s as polynomials in s.
    std::vector<Polynomial> parameterization(Backend b) const;

  private:
    Slice() = default;
    std::vector<Coefficient> base_;
    std::optional<Matrix> directions_;
    std::vector<Polynomial> f_;
    std::vector<Coefficient> q0_;
    double lo_ = -1e300, hi_ = 1e300;
};

/// Faddeev-Popov determinant det^{1/2}((iota_w^perp)^* iota_w^perp): the
/// Gram determinant of the generator columns projected onto the normal
/// space of the slice. Exact when the determinant is a perfect rational
/// square, float otherwise.
Coefficient fp_determinant_slice(const GroupAction& action, const Slice& slice,
                                 const std::vector<Coefficient>& w);

/// Wick expansion of the gauge-fixed integrand on an affine slice: the
/// restriction of f times the J_S series about z_S, expanded through N.
WickSeries gauge_fixed_expand_slice(const Integrand& integrand, const GroupAction& action,
                                    const Slice& slice, const std::vector<Coefficient>& z_s,
                                    int N, const WickOptions& opts = {});

/// Weighted gauge data: gauge map F, weight exponent h with nondegenerate
/// critical point q0, and the Wick-expansion normalizer c_hbar of
/// int dq e^{-h/hbar}. The scalar prefactor (2 pi hbar)^{g/2}
/// det(Hess h)^{-1/2} e^{-h(q0)/hbar} of c_hbar is kept symbolic in
/// (algebra_dim, det_hess_h, h_at_q0); `gamma` is the unit-leading series.
class WeightedGauge {
  public:
    WeightedGauge(std::vector<Polynomial> f, Polynomial h, std::vector<Coefficient> q0, int N);

    int target_dim() const { return static_cast<int>(f_.size()); }
    const std::vector<Polynomial>& gauge_map() const { return f_; }
    const Polynomial& weight_exponent() const { return h_; }
    const std::vector<Coefficient>& q0() const { return q0_; }
    const Coefficient& det_hess_h() const { return det_hess_; }
    const Coefficient& h_at_q0() const { return h_q0_; }
    const std::vector<Coefficient>& gamma() const { return gamma_; }
    int order() const { return static_cast<int>(gamma_.size()) - 1; }

  private:
    std::vector<Polynomial> f_;
    Polynomial h_;
    std::vector<Coefficient> q0_;
    Coefficient det_hess_, h_q0_;
    std::vector<Coefficient> gamma_;
};

/// The weighted Faddeev-Popov integrand on all of R^d: action S + h(F(x)),
/// observable f det(dF o iota_x) gamma^{-1}. The remaining scalar part of
/// c_hbar^{-1} is carried by the WeightedGauge, not the integrand.
Integrand weighted_fp_integrand(const Integrand& integrand, const GroupAction& action,
                                const WeightedGauge& wg);

/// Normalization-free invariants of a Wick series: the effective critical
/// value and dimension, the squared amplitude c_0^2 / detA (with the
/// normalizer factors folded in on the weighted side), the ratios c_k/c_0,
/// and the sign of a real c_0. Two expansions represent the same series
/// exactly when these agree.
struct ReducedSeries {
    Coefficient s0;
    int dim = 0;
    Coefficient amp2;
    std::vector<Coefficient> ratios;
    int c0_sign = 0;  // sign of a real c_0; 0 when c_0 is not real

    bool operator==(const ReducedSeries& o) const;
};

ReducedSeries reduce_slice_series(const WickSeries& w);
ReducedSeries reduce_weighted_series(const WickSeries& w, const WeightedGauge& wg);

/// Wick expansions of the weighted integrand and of the slice restriction
/// about z_S agree as series; exact backends compare bit-exactly.
bool check_weighted_equals_slice(const Integrand& integrand, const GroupAction& action,
                                 const Slice& slice, const WeightedGauge& wg,
                                 const std::vector<Coefficient>& z_s, int N,
                                 const WickOptions& opts = {});

struct FpVolumeReport {
    std::complex<double> total_integral;
    std::complex<double> gauge_fixed_integral;  // Vol(G) x slice integral
    double rel_error = 0.0;
    bool passed = false;
};

/// Numeric slice Faddeev-Popov identity for compact SO(2)-type actions:
/// compares the full integral with Vol(G) int_S J_S f e^{-S/hbar}.
FpVolumeReport check_fp_volume_numeric(const Integrand& integrand, const GroupAction& action,
                                       const Slice& slice, double hbar, double tol);

/// Winding number of theta -> F(R_theta w) for a two-component polynomial
/// map into the punctured plane, by angle tracking.
int orbit_degree(const std::vector<Polynomial>& f, const std::vector<double>& w, int samples);

/// Numeric weighted integral for the circle-valued gauge map with angle
/// multiplier k (so orbit degree k), weight exp(-h(q)/hbar) normalized on
/// the circle: returns (weighted integral, slice integral).
std::pair<double, double> weighted_degree_integrals(const Integrand& integrand,
                                                    const Polynomial& h, int k, double hbar,
                                                    double tol = 1e-9);

}  // namespace wicklab

#endif
