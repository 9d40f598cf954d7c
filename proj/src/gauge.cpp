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

#include "wicklab/gauge.hpp"

#include <cmath>

#include "wicklab/oracle.hpp"

namespace wicklab {

namespace {

using cxd = std::complex<double>;

Coefficient to_backend(const Coefficient& c, Backend b) {
    if (c.backend() == b) return c;
    if (b == Backend::Float) return Coefficient::floating(c.to_complex());
    throw BackendMismatch("cannot promote a float value to the exact backend");
}

Polynomial generator_component(const Generator& gen, int i, int dim, Backend b) {
    Polynomial p(dim, b);
    for (int j = 0; j < dim; ++j)
        if (!gen.x.at(i, j).is_zero())
            p += Polynomial::variable(dim, j, b) * to_backend(gen.x.at(i, j), b);
    if (i < static_cast<int>(gen.offset.size()) && !gen.offset[i].is_zero())
        p += Polynomial::constant(dim, to_backend(gen.offset[i], b));
    return p;
}

Polynomial lie_derivative(const Polynomial& p, const Generator& gen) {
    const int d = p.dim();
    Polynomial acc(d, p.backend());
    for (int i = 0; i < d; ++i)
        acc += p.derivative(i) * generator_component(gen, i, d, p.backend());
    return acc;
}

}  // namespace

GroupAction::GroupAction(int dim, std::vector<Generator> generators)
    : dim_(dim), gens_(std::move(generators)) {
    for (auto& g : gens_) {
        if (g.x.rows() != dim || g.x.cols() != dim)
            throw DimensionMismatch("generator matrix shape");
        if (g.offset.empty()) g.offset.assign(dim, Coefficient::zero(g.x.backend()));
        if (static_cast<int>(g.offset.size()) != dim)
            throw DimensionMismatch("generator offset length");
        if (!g.x.trace().is_zero())
            throw Error("generator is not traceless (volume is not preserved)");
    }
}

GroupAction GroupAction::so2() {
    Generator rot{Matrix::from_rows({{0, -1}, {1, 0}}), {}};
    return GroupAction(2, {rot});
}

bool GroupAction::leaves_invariant(const Polynomial& p) const {
    for (const auto& gen : gens_) {
        Polynomial lv = lie_derivative(p, gen);
        if (p.backend() == Backend::Exact) {
            if (!lv.is_zero()) return false;
        } else {
            // sampled check at fixed pseudo-random points
            std::vector<std::complex<double>> pt(static_cast<std::size_t>(dim_));
            for (int s = 0; s < 8; ++s) {
                for (int i = 0; i < dim_; ++i)
                    pt[i] = 0.1 + 0.37 * ((s * dim_ + i) % 7) - 0.9 * ((s + i) % 3);
                if (std::abs(lv.evaluate_c(pt)) > 1e-10) return false;
            }
        }
    }
    return true;
}

void GroupAction::require_invariant(const Integrand& integrand) const {
    if (!leaves_invariant(integrand.action))
        throw NotInvariant("action is not invariant under the group action");
    for (const auto& [g, poly] : integrand.observable.grades())
        if (!leaves_invariant(poly))
            throw NotInvariant("observable is not invariant under the group action");
}

Matrix orbit_map(const GroupAction& action, const std::vector<Coefficient>& x) {
    if (static_cast<int>(x.size()) != action.dim())
        throw DimensionMismatch("orbit_map point length");
    Backend b = x.empty() ? Backend::Exact : x.front().backend();
    Matrix out(action.dim(), action.algebra_dim(), b);
    for (int a = 0; a < action.algebra_dim(); ++a) {
        const Generator& gen = action.generators()[a];
        std::vector<Coefficient> col = gen.x.mul_vec(x);
        for (int i = 0; i < action.dim(); ++i) out.at(i, a) = col[i] + gen.offset[i];
    }
    return out;
}

Slice Slice::affine(std::vector<Coefficient> base, Matrix directions, double param_lo,
                    double param_hi) {
    if (static_cast<int>(base.size()) != directions.rows())
        throw DimensionMismatch("slice base/directions shape");
    Slice s;
    s.base_ = std::move(base);
    s.directions_ = std::move(directions);
    s.lo_ = param_lo;
    s.hi_ = param_hi;
    return s;
}

Slice Slice::level_set(std::vector<Polynomial> f, std::vector<Coefficient> q0) {
    if (f.empty() || f.size() != q0.size())
        throw DimensionMismatch("level-set slice needs one target value per component");
    Slice s;
    s.f_ = std::move(f);
    s.q0_ = std::move(q0);
    return s;
}

int Slice::dim() const {
    return is_affine() ? directions_->rows() : f_.front().dim();
}

int Slice::slice_dim() const {
    return is_affine() ? directions_->cols() : dim() - static_cast<int>(f_.size());
}

const Matrix& Slice::directions() const {
    if (!is_affine()) throw Error("slice has no affine description");
    return *directions_;
}

bool Slice::contains(const std::vector<Coefficient>& w, double tol) const {
    if (is_affine()) {
        Matrix p = normal_projector(w);
        std::vector<Coefficient> delta;
        delta.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) delta.push_back(w[i] - base_[i]);
        for (const auto& c : p.mul_vec(delta)) {
            if (c.backend() == Backend::Exact ? !c.is_zero()
                                              : std::abs(c.to_complex()) > tol)
                return false;
        }
        return true;
    }
    for (std::size_t a = 0; a < f_.size(); ++a) {
        Coefficient v = f_[a].evaluate(w) - q0_[a];
        if (v.backend() == Backend::Exact ? !v.is_zero() : std::abs(v.to_complex()) > tol)
            return false;
    }
    return true;
}

Matrix Slice::normal_projector(const std::vector<Coefficient>& w) const {
    const int d = dim();
    if (is_affine()) {
        const Matrix& dmat = *directions_;
        Backend b = dmat.backend();
        Matrix gram = dmat.transpose() * dmat;
        Matrix inv = [&] {
            try {
                return gram.inverse();
            } catch (const SingularMatrix&) {
                throw NonTransverse("slice directions are linearly dependent");
            }
        }();
        return Matrix::identity(d, b) - dmat * inv * dmat.transpose();
    }
    // level set: normal space spanned by the gradients at w
    Backend b = f_.front().backend();
    Matrix n(d, static_cast<int>(f_.size()), b);
    for (std::size_t a = 0; a < f_.size(); ++a)
        for (int i = 0; i < d; ++i) n.at(i, static_cast<int>(a)) = f_[a].derivative(i).evaluate(w);
    Matrix gram = n.transpose() * n;
    Matrix inv = [&] {
        try {
            return gram.inverse();
        } catch (const SingularMatrix&) {
            throw NonTransverse("level-set gradients are linearly dependent");
        }
    }();
    return n * inv * n.transpose();
}

std::vector<Polynomial> Slice::parameterization(Backend b) const {
    if (!is_affine()) throw Error("slice has no affine description");
    const int d = dim();
    const int m = slice_dim();
    std::vector<Polynomial> param;
    param.reserve(d);
    for (int i = 0; i < d; ++i) {
        Polynomial pi = Polynomial::constant(m, base_[i]);
        for (int a = 0; a < m; ++a)
            pi += Polynomial::variable(m, a, b) * directions_->at(i, a);
        param.push_back(pi);
    }
    return param;
}

Coefficient fp_determinant_slice(const GroupAction& action, const Slice& slice,
                                 const std::vector<Coefficient>& w) {
    if (!slice.contains(w)) throw NotOnSlice("point is not on the slice");
    Matrix iota = orbit_map(action, w);
    Matrix proj = slice.normal_projector(w);
    Matrix projected = proj * iota;
    Matrix gram = projected.transpose() * projected;
    Coefficient det = gram.determinant();
    if (det.is_zero()) throw NonTransverse("projected generators are degenerate");
    if (det.backend() == Backend::Float) {
        cxd v = det.to_complex();
        if (v.real() <= 0.0) throw NonTransverse("Gram determinant is not positive");
        return Coefficient::floating(std::sqrt(v.real()));
    }
    if (auto root = det.sqrt_exact()) return *root;
    return Coefficient::floating(std::sqrt(det.to_complex().real()));
}

namespace {

// Truncated binomial series sqrt(t) = sqrt(t(0)) (1 + u)^{1/2} with
// u = t/t(0) - 1; exact rationals when sqrt(t(0)) is rational.
Polynomial sqrt_series(const Polynomial& t, int degree_cap) {
    Backend b = t.backend();
    Coefficient t0 = t.constant_term();
    if (t0.is_zero()) throw NonTransverse("Gram determinant vanishes at the base point");
    Coefficient root0 = [&] {
        if (auto r = t0.sqrt_exact()) return *r;
        if (b == Backend::Float) return Coefficient::floating(std::sqrt(t0.to_complex()));
        throw Error("Gram determinant at the base point is not a rational square; "
                    "use the float backend for this slice");
    }();
    Polynomial u = t * t0.inverse() - Polynomial::constant(t.dim(), Coefficient::one(b));
    Polynomial acc = Polynomial::constant(t.dim(), Coefficient::one(b));
    Polynomial upow = acc;
    Coefficient binom = Coefficient::one(b);
    Coefficient half = Coefficient::one(b) / (Coefficient::one(b) + Coefficient::one(b));
    for (int k = 1; k <= degree_cap; ++k) {
        Coefficient kc = b == Backend::Exact ? Coefficient::exact(k)
                                             : Coefficient::floating(static_cast<double>(k));
        Coefficient km1 = b == Backend::Exact
                              ? Coefficient::exact(k - 1)
                              : Coefficient::floating(static_cast<double>(k - 1));
        binom = binom * (half - km1) / kc;
        upow = (upow * u).truncate_degree(degree_cap);
        if (upow.is_zero()) break;
        acc += upow * binom;
    }
    return (acc * root0).truncate_degree(degree_cap);
}

Slice slice_with_backend(const Slice& s, Backend b) {
    auto conv = [b](const Coefficient& c) {
        return b == Backend::Float && c.backend() == Backend::Exact
                   ? Coefficient::floating(c.to_complex())
                   : c;
    };
    if (s.is_affine()) {
        std::vector<Coefficient> base;
        for (const auto& c : s.base()) base.push_back(conv(c));
        Matrix dirs(s.directions().rows(), s.directions().cols(), b);
        for (int i = 0; i < dirs.rows(); ++i)
            for (int j = 0; j < dirs.cols(); ++j) dirs.at(i, j) = conv(s.directions().at(i, j));
        return Slice::affine(std::move(base), std::move(dirs), s.param_lo(), s.param_hi());
    }
    std::vector<Polynomial> f;
    for (const auto& p : s.level_f()) f.push_back(b == Backend::Float ? p.to_float() : p);
    std::vector<Coefficient> q0;
    for (const auto& c : s.q0()) q0.push_back(conv(c));
    return Slice::level_set(std::move(f), std::move(q0));
}

Slice as_affine(const Slice& slice, Backend b) {
    if (slice.is_affine()) return slice;
    // linear level sets convert: solve C x = q0 - d, nullspace spans the slice
    const auto& f = slice.level_f();
    const int d = slice.dim();
    const int g = static_cast<int>(f.size());
    Matrix c(g, d, b);
    std::vector<Coefficient> rhs;
    for (int a = 0; a < g; ++a) {
        if (f[a].total_degree() > 1)
            throw Error("only affine level-set slices convert to a parameterization");
        for (int j = 0; j < d; ++j) {
            Exponents e(d, 0);
            e[j] = 1;
            c.at(a, j) = f[a].coeff(e);
        }
        rhs.push_back(slice.q0()[a] - f[a].constant_term());
    }
    // Gaussian elimination with column pivots to find a particular solution
    // and a nullspace basis.
    std::vector<int> pivot_col;
    Matrix work = c;
    std::vector<Coefficient> b_vec = rhs;
    int row = 0;
    for (int col = 0; col < d && row < g; ++col) {
        int pr = -1;
        for (int r = row; r < g; ++r)
            if (!work.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != row) {
            for (int j = 0; j < d; ++j) std::swap(work.at(pr, j), work.at(row, j));
            std::swap(b_vec[pr], b_vec[row]);
        }
        Coefficient inv = work.at(row, col).inverse();
        for (int j = 0; j < d; ++j) work.at(row, j) *= inv;
        b_vec[row] *= inv;
        for (int r = 0; r < g; ++r) {
            if (r == row) continue;
            Coefficient factor = work.at(r, col);
            if (factor.is_zero()) continue;
            for (int j = 0; j < d; ++j) work.at(r, j) -= factor * work.at(row, j);
            b_vec[r] -= factor * b_vec[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int r = row; r < g; ++r)
        if (!b_vec[r].is_zero()) throw NonTransverse("level-set slice is empty");
    std::vector<Coefficient> base(d, Coefficient::zero(b));
    for (int r = 0; r < row; ++r) base[pivot_col[r]] = b_vec[r];
    std::vector<int> free_cols;
    for (int j = 0; j < d; ++j)
        if (std::find(pivot_col.begin(), pivot_col.end(), j) == pivot_col.end())
            free_cols.push_back(j);
    Matrix dirs(d, static_cast<int>(free_cols.size()), b);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        dirs.at(free_cols[k], static_cast<int>(k)) = Coefficient::one(b);
        for (int r = 0; r < row; ++r)
            dirs.at(pivot_col[r], static_cast<int>(k)) = -work.at(r, free_cols[k]);
    }
    return Slice::affine(std::move(base), std::move(dirs));
}

}  // namespace

WickSeries gauge_fixed_expand_slice(const Integrand& integrand, const GroupAction& action,
                                    const Slice& slice_in, const std::vector<Coefficient>& z_s,
                                    int N, const WickOptions& opts) {
    const Backend b = integrand.backend();
    action.require_invariant(integrand);
    Slice slice = as_affine(slice_with_backend(slice_in, b), b);
    if (!slice.contains(z_s)) throw NotOnSlice("expansion point is not on the slice");
    const int m = slice.slice_dim();
    if (slice.dim() != integrand.dim()) throw DimensionMismatch("slice dimension");

    // parameterize about z_S itself
    Slice local = Slice::affine(z_s, slice.directions());
    std::vector<Polynomial> param = local.parameterization(b);

    Polynomial s_slice = substitute(integrand.action, param);

    // J_S as a polynomial series about z_S: Gram matrix of the projected
    // generator columns along the slice, then the square-root series.
    Matrix proj = slice.normal_projector(z_s);
    const int d = slice.dim();
    const int g = action.algebra_dim();
    std::vector<std::vector<Polynomial>> projected(d,
                                                   std::vector<Polynomial>(g, Polynomial(m, b)));
    for (int a = 0; a < g; ++a) {
        const Generator& gen = action.generators()[a];
        std::vector<Polynomial> col;
        col.reserve(d);
        for (int i = 0; i < d; ++i)
            col.push_back(substitute(generator_component(gen, i, d, b), param));
        for (int i = 0; i < d; ++i) {
            Polynomial acc(m, b);
            for (int j = 0; j < d; ++j)
                if (!proj.at(i, j).is_zero()) acc += col[j] * proj.at(i, j);
            projected[i][a] = acc;
        }
    }
    std::vector<std::vector<Polynomial>> gram(g, std::vector<Polynomial>(g, Polynomial(m, b)));
    for (int a = 0; a < g; ++a)
        for (int c = 0; c < g; ++c) {
            Polynomial acc(m, b);
            for (int i = 0; i < d; ++i) acc += projected[i][a] * projected[i][c];
            gram[a][c] = acc;
        }
    Polynomial gram_det = polynomial_matrix_det(gram);
    Polynomial j_series = sqrt_series(gram_det, 2 * N);

    HbarGradedSeries obs(m, b, 2 * N);
    for (const auto& [grade, poly] : integrand.observable.grades())
        obs.add_at(grade, (substitute(poly, param) * j_series).truncate_degree(2 * N + std::max(0, -grade)));

    return wick_expand(Integrand(std::move(s_slice), std::move(obs)),
                       std::vector<Coefficient>(static_cast<std::size_t>(m),
                                                Coefficient::zero(b)),
                       N, opts);
}

WeightedGauge::WeightedGauge(std::vector<Polynomial> f, Polynomial h,
                             std::vector<Coefficient> q0, int N)
    : f_(std::move(f)), h_(std::move(h)), q0_(std::move(q0)) {
    const int g = static_cast<int>(f_.size());
    if (g == 0) throw DimensionMismatch("weighted gauge needs at least one component");
    if (h_.dim() != g) throw DimensionMismatch("weight exponent dimension");
    if (static_cast<int>(q0_.size()) != g) throw DimensionMismatch("q0 length");
    WickSeries normalizer = wick_expand(Integrand::unit(h_), q0_, N);
    det_hess_ = normalizer.det_a;
    h_q0_ = normalizer.s0;
    gamma_.reserve(static_cast<std::size_t>(N + 1));
    for (int k = 0; k <= N; ++k) gamma_.push_back(normalizer.c(k));
    if (!gamma_[0].is_one()) throw Error("normalizer series must lead with 1");
}

Integrand weighted_fp_integrand(const Integrand& integrand, const GroupAction& action,
                                const WeightedGauge& wg) {
    const Backend b = integrand.backend();
    const int d = integrand.dim();
    const int g = wg.target_dim();
    if (action.algebra_dim() != g)
        throw DimensionMismatch("gauge map target dimension differs from the algebra");
    action.require_invariant(integrand);

    Polynomial new_action = integrand.action + substitute(wg.weight_exponent(), wg.gauge_map());

    // det(dF o iota_x) as an exact polynomial
    std::vector<std::vector<Polynomial>> m(g, std::vector<Polynomial>(g, Polynomial(d, b)));
    for (int a = 0; a < g; ++a)
        for (int c = 0; c < g; ++c) {
            Polynomial acc(d, b);
            for (int i = 0; i < d; ++i)
                acc += wg.gauge_map()[a].derivative(i) *
                       generator_component(action.generators()[c], i, d, b);
            m[a][c] = acc;
        }
    Polynomial fp_det = polynomial_matrix_det(m);

    // gamma^{-1}: the unit-leading Laurent-free part of c_hbar^{-1}
    const int order2 = 2 * wg.order();
    HbarGradedSeries gamma(d, b, order2);
    for (int k = 0; k <= wg.order(); ++k)
        gamma.add_at(2 * k, Polynomial::constant(d, wg.gamma()[static_cast<std::size_t>(k)]));
    HbarGradedSeries gamma_inv = gamma.inverse(order2);

    HbarGradedSeries obs = integrand.observable.mul_poly(fp_det).mul(gamma_inv, order2);
    return Integrand(std::move(new_action), std::move(obs));
}

bool ReducedSeries::operator==(const ReducedSeries& o) const {
    return s0 == o.s0 && dim == o.dim && amp2 == o.amp2 && ratios == o.ratios &&
           c0_sign == o.c0_sign;
}

namespace {

int real_sign(const Coefficient& c) {
    if (!c.is_real()) return 0;
    if (c.backend() == Backend::Exact) return sgn(c.exact_re());
    double v = c.to_complex().real();
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

ReducedSeries reduce(const WickSeries& w, const Coefficient& hess_factor,
                     const Coefficient& s0_shift, int dim_shift) {
    if (w.kmin != 0)
        throw Error("reduced comparison expects series starting at hbar^0");
    Coefficient c0 = w.c(0);
    if (c0.is_zero()) throw Error("reduced comparison needs c_0 != 0");
    ReducedSeries r;
    r.s0 = w.s0 - s0_shift;
    r.dim = w.dim - dim_shift;
    r.amp2 = c0 * c0 * hess_factor / w.det_a;
    for (int k = 1; k <= w.order; ++k) r.ratios.push_back(w.c(k) / c0);
    r.c0_sign = real_sign(c0);
    return r;
}

}  // namespace

ReducedSeries reduce_slice_series(const WickSeries& w) {
    return reduce(w, Coefficient::one(w.s0.backend()), Coefficient::zero(w.s0.backend()), 0);
}

ReducedSeries reduce_weighted_series(const WickSeries& w, const WeightedGauge& wg) {
    return reduce(w, wg.det_hess_h(), wg.h_at_q0(), wg.target_dim());
}

bool check_weighted_equals_slice(const Integrand& integrand, const GroupAction& action,
                                 const Slice& slice, const WeightedGauge& wg,
                                 const std::vector<Coefficient>& z_s, int N,
                                 const WickOptions& opts) {
    WickSeries ws = gauge_fixed_expand_slice(integrand, action, slice, z_s, N, opts);
    WickSeries ww = wick_expand(weighted_fp_integrand(integrand, action, wg), z_s, N, opts);
    return reduce_weighted_series(ww, wg) == reduce_slice_series(ws);
}

FpVolumeReport check_fp_volume_numeric(const Integrand& integrand, const GroupAction& action,
                                       const Slice& slice_in, double hbar, double tol) {
    const double quad_tol = tol * 1e-2;
    Integrand fint(integrand.action.to_float(), integrand.observable.to_float());
    action.require_invariant(fint);
    IntegralResult lhs = integrate_numeric(fint, hbar, std::nullopt, quad_tol);

    Slice slice = as_affine(slice_with_backend(slice_in, Backend::Float), Backend::Float);
    if (slice.slice_dim() != 1)
        throw Error("numeric FP check supports one-dimensional slices");
    std::vector<Polynomial> param;
    for (const auto& p : slice.parameterization(Backend::Float)) param.push_back(p);

    Polynomial s_slice = substitute(fint.action.to_float(), param);
    CompiledPoly s_c(s_slice);
    std::vector<std::pair<int, CompiledPoly>> f_c;
    for (const auto& [g, poly] : fint.observable.grades())
        f_c.emplace_back(g, CompiledPoly(substitute(poly.to_float(), param)));

    // Gram determinant along the slice, evaluated numerically
    const Backend b = Backend::Float;
    const int d = slice.dim();
    const int g = action.algebra_dim();
    Matrix proj = slice.normal_projector(slice.base());
    std::vector<std::vector<Polynomial>> projected(d, std::vector<Polynomial>(g, Polynomial(1, b)));
    for (int a = 0; a < g; ++a) {
        std::vector<Polynomial> col;
        for (int i = 0; i < d; ++i) {
            Matrix gx = action.generators()[a].x;
            Polynomial ci(1, b);
            for (int j = 0; j < d; ++j)
                if (!gx.at(i, j).is_zero()) ci += param[j] * Coefficient::floating(gx.at(i, j).to_complex());
            if (!action.generators()[a].offset[i].is_zero())
                ci += Polynomial::constant(
                    1, Coefficient::floating(action.generators()[a].offset[i].to_complex()));
            col.push_back(ci);
        }
        for (int i = 0; i < d; ++i) {
            Polynomial acc(1, b);
            for (int j = 0; j < d; ++j)
                if (!proj.at(i, j).is_zero())
                    acc += col[j] * Coefficient::floating(proj.at(i, j).to_complex());
            projected[i][a] = acc;
        }
    }
    std::vector<std::vector<Polynomial>> gram(g, std::vector<Polynomial>(g, Polynomial(1, b)));
    for (int a = 0; a < g; ++a)
        for (int c = 0; c < g; ++c) {
            Polynomial acc(1, b);
            for (int i = 0; i < d; ++i) acc += projected[i][a] * projected[i][c];
            gram[a][c] = acc;
        }
    CompiledPoly gram_det(polynomial_matrix_det(gram));

    cxd sqrt_h = std::sqrt(cxd(hbar, 0.0));
    auto slice_integrand = [&](double s) {
        std::span<const double> xs(&s, 1);
        cxd f = 0.0;
        for (const auto& [grade, p] : f_c) f += std::pow(sqrt_h, grade) * p.eval(xs);
        double t = gram_det.eval(xs).real();
        double j = t > 0.0 ? std::sqrt(t) : 0.0;
        return f * j * std::exp(-s_c.eval(xs) / cxd(hbar, 0.0));
    };

    // expand integration bounds inside the allowed parameter window
    double lo = std::max(slice.param_lo(), -1.0);
    double hi = std::min(slice.param_hi(), 1.0);
    double peak = std::abs(slice_integrand(0.0));
    for (int it = 0; it < 200; ++it) {
        bool grown = false;
        if (std::abs(slice_integrand(hi)) > peak * quad_tol * 1e-2 &&
            hi < slice.param_hi() - 1e-12) {
            hi = std::min(slice.param_hi(), hi * 1.5 + 0.1);
            grown = true;
        }
        if (std::abs(slice_integrand(lo)) > peak * quad_tol * 1e-2 &&
            lo > slice.param_lo() + 1e-12) {
            lo = std::max(slice.param_lo(), lo * 1.5 - 0.1);
            grown = true;
        }
        for (int probe = 1; probe <= 8; ++probe) {
            double t = lo + (hi - lo) * probe / 9.0;
            peak = std::max(peak, std::abs(slice_integrand(t)));
        }
        if (!grown) break;
        if (hi > 1e6 || lo < -1e6) throw NoDecay("slice integrand does not decay");
    }
    IntegralResult rhs = integrate_1d(slice_integrand, lo, hi, quad_tol * peak, 8);

    double vol_g = std::pow(2.0 * M_PI, g);
    FpVolumeReport rep;
    rep.total_integral = lhs.value;
    rep.gauge_fixed_integral = vol_g * rhs.value;
    rep.rel_error = std::abs(rep.total_integral - rep.gauge_fixed_integral) /
                    std::abs(rep.total_integral);
    rep.passed = rep.rel_error <= tol;
    return rep;
}

int orbit_degree(const std::vector<Polynomial>& f, const std::vector<double>& w, int samples) {
    if (f.size() != 2) throw DimensionMismatch("orbit degree expects a two-component map");
    if (w.size() != 2) throw DimensionMismatch("orbit degree is implemented for SO(2) on R^2");
    if (samples < 8) samples = 8;
    CompiledPoly f1(f[0]), f2(f[1]);
    double scale = std::hypot(w[0], w[1]);
    double total = 0.0;
    double prev = 0.0;
    for (int s = 0; s <= samples; ++s) {
        double theta = 2.0 * M_PI * s / samples;
        double x[2] = {std::cos(theta) * w[0] - std::sin(theta) * w[1],
                       std::sin(theta) * w[0] + std::cos(theta) * w[1]};
        std::span<const double> xs(x, 2);
        double v1 = f1.eval(xs).real(), v2 = f2.eval(xs).real();
        if (std::hypot(v1, v2) < 1e-9 * std::max(1.0, scale))
            throw DegenerateOnOrbit("gauge map vanishes on the orbit");
        double ang = std::atan2(v2, v1);
        if (s > 0) {
            double delta = ang - prev;
            while (delta > M_PI) delta -= 2.0 * M_PI;
            while (delta < -M_PI) delta += 2.0 * M_PI;
            total += delta;
        }
        prev = ang;
    }
    double winding = total / (2.0 * M_PI);
    int deg = static_cast<int>(std::lround(winding));
    if (std::abs(winding - deg) > 0.01)
        throw DegenerateOnOrbit("angle tracking did not close up");
    if (deg == 0) throw DegenerateOnOrbit("gauge map has zero orbit degree");
    return deg;
}

std::pair<double, double> weighted_degree_integrals(const Integrand& integrand,
                                                    const Polynomial& h, int k, double hbar,
                                                    double tol) {
    if (integrand.dim() != 2) throw DimensionMismatch("degree demo lives on the plane");
    if (h.dim() != 1) throw DimensionMismatch("weight exponent must live on the circle");
    if (k < 1) throw Error("angle multiplier must be positive");
    GroupAction::so2().require_invariant(
        Integrand(integrand.action.to_float(), integrand.observable.to_float()));

    CompiledPoly hc(h.to_float());
    auto phi_raw = [&](double q) {
        std::span<const double> qs(&q, 1);
        return std::exp(-hc.eval(qs).real() / hbar);
    };
    double c_phi = integrate_1d([&](double q) { return cxd(phi_raw(q), 0.0); }, -M_PI, M_PI,
                                tol * 1e-2, 8)
                       .value.real();

    // theta integral of phi(wrap(k theta)) * k, split at the wrap points
    double theta_total = 0.0;
    for (int j = 0; j < k; ++j) {
        double lo = (2.0 * j - 1.0) * M_PI / k;
        double hi = (2.0 * j + 1.0) * M_PI / k;
        auto fseg = [&](double theta) {
            double q = k * theta - 2.0 * M_PI * j;
            return cxd(phi_raw(q) * k / c_phi, 0.0);
        };
        theta_total += integrate_1d(fseg, lo, hi, tol * 1e-2, 8).value.real();
    }

    // radial factor: f and S are invariant, evaluate on the positive x-axis
    CompiledPoly sc(integrand.action.to_float());
    std::vector<std::pair<int, CompiledPoly>> f_c;
    for (const auto& [g, poly] : integrand.observable.grades())
        f_c.emplace_back(g, CompiledPoly(poly.to_float()));
    cxd sqrt_h = std::sqrt(cxd(hbar, 0.0));
    auto radial = [&](double r) {
        double x[2] = {r, 0.0};
        std::span<const double> xs(x, 2);
        cxd f = 0.0;
        for (const auto& [grade, p] : f_c) f += std::pow(sqrt_h, grade) * p.eval(xs);
        return f * r * std::exp(-sc.eval(xs).real() / hbar);
    };
    double hi = 1.0;
    double peak = std::abs(radial(1.0));
    for (int it = 0; it < 100 && std::abs(radial(hi)) > peak * tol * 1e-2; ++it) {
        hi *= 1.4;
        for (int p = 1; p <= 4; ++p) peak = std::max(peak, std::abs(radial(hi * p / 5.0)));
        if (hi > 1e6) throw NoDecay("radial integrand does not decay");
    }
    double r_int = integrate_1d(radial, 0.0, hi, tol * 1e-2 * std::max(peak, 1e-300), 8)
                       .value.real();

    return {theta_total * r_int, r_int};
}

}  // namespace wicklab
