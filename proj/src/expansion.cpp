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

#include "wicklab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace wicklab {

Integrand::Integrand(Polynomial s, HbarGradedSeries f)
    : action(std::move(s)), observable(std::move(f)) {
    if (action.dim() != observable.dim()) throw DimensionMismatch("integrand dimensions");
    if (action.backend() != observable.backend())
        throw BackendMismatch("integrand backends differ");
}

Integrand Integrand::plain(Polynomial s, Polynomial f) {
    HbarGradedSeries obs = HbarGradedSeries::from_polynomial(f, 0);
    return Integrand(std::move(s), std::move(obs));
}

Integrand Integrand::unit(Polynomial s) {
    Polynomial one = Polynomial::constant(s.dim(), Coefficient::one(s.backend()));
    return plain(std::move(s), std::move(one));
}

Coefficient WickSeries::c(int k) const {
    if (k < kmin || k > order || k - kmin >= static_cast<int>(coeffs.size()))
        return Coefficient::zero(s0.backend());
    return coeffs[static_cast<std::size_t>(k - kmin)];
}

bool WickSeries::all_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(),
                       [](const Coefficient& c) { return c.is_zero(); });
}

bool WickSeries::coefficients_equal(const WickSeries& a, const WickSeries& b) {
    int lo = std::min(a.kmin, b.kmin);
    int hi = std::min(a.order, b.order);
    for (int k = lo; k <= hi; ++k)
        if (a.c(k) != b.c(k)) return false;
    return true;
}

std::complex<double> WickSeries::prefactor_numeric(std::complex<double> hbar) const {
    std::complex<double> two_pi_h = 2.0 * M_PI * hbar;
    std::complex<double> amp =
        std::sqrt(std::pow(two_pi_h, dim) / det_a.to_complex());
    return amp * std::exp(-s0.to_complex() / hbar);
}

std::complex<double> WickSeries::evaluate_numeric(std::complex<double> hbar,
                                                  int through_order) const {
    std::complex<double> sum = 0.0;
    for (int k = kmin; k <= std::min(order, through_order); ++k)
        sum += c(k).to_complex() * std::pow(hbar, k);
    return prefactor_numeric(hbar) * sum;
}

namespace {

Coefficient from_int(long v, Backend b) {
    return b == Backend::Exact ? Coefficient::exact(v)
                               : Coefficient::floating(static_cast<double>(v));
}

bool small(const Coefficient& c, double tol) {
    return c.backend() == Backend::Exact ? c.is_zero() : std::abs(c.to_complex()) <= tol;
}

}  // namespace

SplitAction split_action(const Polynomial& s, const std::vector<Coefficient>& x0, double tol) {
    if (static_cast<int>(x0.size()) != s.dim())
        throw DimensionMismatch("critical point length differs from dimension");
    const int d = s.dim();
    const Backend b = s.backend();
    Polynomial recentered = s.recenter(x0);
    auto parts = recentered.homogeneous_parts();

    Coefficient s0 = recentered.constant_term();
    auto lin = parts.find(1);
    if (lin != parts.end())
        for (const auto& [e, c] : lin->second.terms())
            if (!small(c, tol)) throw NotCritical("gradient does not vanish at x0");

    Matrix a(d, d, b);
    auto quad = parts.find(2);
    if (quad != parts.end()) {
        for (const auto& [e, c] : quad->second.terms()) {
            int i = -1, j = -1;
            for (int v = 0; v < d; ++v) {
                if (e[v] == 2) i = j = v;
                else if (e[v] == 1) (i < 0 ? i : j) = v;
            }
            if (i == j) a.at(i, i) = c + c;  // (1/2) A_ii x_i^2
            else {
                a.at(i, j) = c;
                a.at(j, i) = c;
            }
        }
    }
    QuadraticForm form = [&] {
        try {
            return invert_symmetric(a);
        } catch (const SingularMatrix&) {
            throw SingularHessian("Hessian is singular at x0");
        }
    }();

    Polynomial sbar_centered(d, b);
    for (const auto& [k, part] : parts)
        if (k >= 3) sbar_centered -= part;
    std::vector<Coefficient> minus_x0;
    minus_x0.reserve(x0.size());
    for (const auto& c : x0) minus_x0.push_back(-c);
    Polynomial sbar = sbar_centered.recenter(minus_x0);
    return SplitAction{std::move(s0), std::move(form), std::move(sbar),
                       std::move(sbar_centered)};
}

std::vector<double> find_critical_point(const Polynomial& s, std::vector<double> guess,
                                        double tol, int max_iter, double cond_threshold) {
    const int d = s.dim();
    if (static_cast<int>(guess.size()) != d) throw DimensionMismatch("guess length");
    std::vector<CompiledPoly> grad;
    std::vector<std::vector<CompiledPoly>> hess(d);
    double hess_scale = 0.0;
    for (int i = 0; i < d; ++i) {
        Polynomial gi = s.derivative(i);
        grad.emplace_back(gi);
        for (int j = 0; j < d; ++j) {
            Polynomial hij = gi.derivative(j);
            for (const auto& [e, c] : hij.terms())
                hess_scale = std::max(hess_scale, std::abs(c.to_complex()));
            hess[i].emplace_back(hij);
        }
    }
    if (hess_scale == 0.0) throw DegenerateCritical("action has no quadratic part");

    auto hessian_at = [&](const std::vector<double>& x) {
        Matrix h(d, d, Backend::Float);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                h.at(i, j) = Coefficient::floating(hess[i][j].eval(x).real());
        return h;
    };
    auto norm1 = [&](const Matrix& m) {
        double best = 0.0;
        for (int j = 0; j < m.cols(); ++j) {
            double col = 0.0;
            for (int i = 0; i < m.rows(); ++i) col += std::abs(m.at(i, j).to_complex());
            best = std::max(best, col);
        }
        return best;
    };

    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        Matrix h = hessian_at(guess);
        Matrix rhs(d, 1, Backend::Float);
        double gnorm = 0.0;
        for (int i = 0; i < d; ++i) {
            double gi = grad[i].eval(guess).real();
            gnorm = std::max(gnorm, std::abs(gi));
            rhs.at(i, 0) = Coefficient::floating(-gi);
        }
        Matrix step = [&] {
            try {
                return h.solve(rhs);
            } catch (const SingularMatrix&) {
                throw DegenerateCritical("singular Hessian during Newton iteration");
            }
        }();
        double snorm = 0.0, xnorm = 0.0;
        for (int i = 0; i < d; ++i) {
            double si = step.at(i, 0).to_complex().real();
            guess[i] += si;
            snorm = std::max(snorm, std::abs(si));
            xnorm = std::max(xnorm, std::abs(guess[i]));
        }
        if (snorm <= 1e-15 * (1.0 + xnorm) && gnorm <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        double gnorm = 0.0;
        for (int i = 0; i < d; ++i) gnorm = std::max(gnorm, std::abs(grad[i].eval(guess).real()));
        if (gnorm > tol) throw NoConvergence("Newton iteration did not converge");
        converged = true;
    }
    Matrix h = hessian_at(guess);
    double cond;
    try {
        cond = norm1(h.inverse()) * std::max(norm1(h), hess_scale);
    } catch (const SingularMatrix&) {
        throw DegenerateCritical("Hessian singular at the critical point");
    }
    if (cond > cond_threshold)
        throw DegenerateCritical("Hessian condition estimate above threshold");
    return guess;
}

WickSeries wick_contract_graded(const HbarGradedSeries& graded, const Propagator& g,
                                const Coefficient& s0, const Coefficient& det_a, int dim,
                                int N, const WickOptions& opts) {
    if (graded.order() < 2 * N)
        throw Error("graded integrand truncated below the requested order");
    WickSeries w;
    w.s0 = s0;
    w.det_a = det_a;
    w.dim = dim;
    w.order = N;
    int gmin = graded.is_zero() ? 0 : graded.min_grade();
    // floor division by 2 for possibly negative grades
    w.kmin = std::min(0, gmin >= 0 ? gmin / 2 : -((-gmin + 1) / 2));
    w.coeffs.assign(static_cast<std::size_t>(N - w.kmin + 1),
                    Coefficient::zero(s0.backend()));
    for (const auto& [grade, poly] : graded.grades()) {
        if (grade > 2 * N) continue;
        Coefficient value = wick_value(poly, g, opts);
        if (grade % 2 != 0) {
            // Odd half-grades must be annihilated (odd polynomials). A
            // nonzero value cannot be represented in an integer series.
            if (!value.is_zero())
                throw Error("half-integer hbar grade survived Wick contraction");
            continue;
        }
        w.coeffs[static_cast<std::size_t>(grade / 2 - w.kmin)] += value;
    }
    return w;
}

namespace {

// Taylor data of f e^{+Sbar/hbar} under x -> x0 + hbar^{1/2} u, grouped by
// half-grade: interaction grades are (degree - 2), observable grades are
// (its Laurent grade + degree).
HbarGradedSeries graded_integrand(const SplitAction& split, const HbarGradedSeries& observable,
                                  const std::vector<Coefficient>& x0, int N) {
    const int d = observable.dim();
    const Backend b = observable.backend();
    HbarGradedSeries f_u(d, b, observable.order());
    for (const auto& [g, poly] : observable.grades()) {
        Polynomial re = poly.recenter(x0);
        for (auto& [deg, part] : re.homogeneous_parts()) f_u.add_at(g + deg, part);
    }
    if (f_u.is_zero()) return HbarGradedSeries::zero(d, b, 2 * N);

    HbarGradedSeries interaction(d, b);
    for (auto& [deg, part] : split.sbar_centered.homogeneous_parts()) {
        if (deg < 3) continue;  // split_action guarantees O(u^3)
        interaction.set(deg - 2, part);
    }
    int fmin = std::min(0, f_u.min_grade());
    HbarGradedSeries expseries = graded_exp(interaction, 2 * N - fmin);
    return expseries.mul(f_u, 2 * N);
}

}  // namespace

WickSeries wick_expand(const Integrand& integrand, const std::vector<Coefficient>& x0, int N,
                       const WickOptions& opts) {
    SplitAction split = split_action(integrand.action, x0);
    HbarGradedSeries graded = graded_integrand(split, integrand.observable, x0, N);
    Propagator g = Propagator::from_form(split.hessian);
    return wick_contract_graded(graded, g, split.s0, split.hessian.determinant(),
                                integrand.dim(), N, opts);
}

FormalDiffeo::FormalDiffeo(std::vector<Polynomial> components)
    : components_(std::move(components)),
      linear_(static_cast<int>(components_.size()), static_cast<int>(components_.size()),
              components_.empty() ? Backend::Exact : components_.front().backend()) {
    const int d = dim();
    if (d == 0) throw DimensionMismatch("empty diffeomorphism");
    for (const auto& c : components_)
        if (c.dim() != d) throw DimensionMismatch("diffeo component dimension");
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Exponents e(d, 0);
            e[j] = 1;
            linear_.at(i, j) = components_[i].coeff(e);
        }
    }
    if (linear_.determinant().is_zero())
        throw SingularMatrix("diffeomorphism has singular linear part");
}

FormalDiffeo FormalDiffeo::identity(int dim, Backend b) {
    std::vector<Polynomial> comps;
    comps.reserve(dim);
    for (int i = 0; i < dim; ++i) comps.push_back(Polynomial::variable(dim, i, b));
    return FormalDiffeo(std::move(comps));
}

std::vector<Coefficient> FormalDiffeo::apply(const std::vector<Coefficient>& x) const {
    std::vector<Coefficient> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(x));
    return out;
}

Polynomial FormalDiffeo::jacobian_det() const {
    const int d = dim();
    std::vector<std::vector<Polynomial>> jac(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) jac[i].push_back(components_[i].derivative(j));
    return polynomial_matrix_det(jac);
}

Matrix FormalDiffeo::jacobian_at(const std::vector<Coefficient>& x) const {
    const int d = dim();
    Matrix j(d, d, backend());
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) j.at(i, k) = components_[i].derivative(k).evaluate(x);
    return j;
}

FormalDiffeo FormalDiffeo::inverse_series(int degree) const {
    const int d = dim();
    const Backend b = backend();
    Matrix linv = linear_.inverse();
    // higher-order part H with Phi = L x + H(x) + Phi(0)
    std::vector<Polynomial> higher;
    std::vector<Coefficient> shift;
    for (int i = 0; i < d; ++i) {
        Polynomial h = components_[i];
        auto parts = h.homogeneous_parts();
        Polynomial acc(d, b);
        for (auto& [k, part] : parts)
            if (k >= 2) acc += part;
        higher.push_back(acc);
        shift.push_back(components_[i].constant_term());
    }
    // Psi solves Phi(Psi(x)) = x; iterate Psi <- L^{-1}(x - shift - H(Psi)).
    std::vector<Polynomial> psi;
    for (int i = 0; i < d; ++i) {
        Polynomial xi(d, b);
        for (int j = 0; j < d; ++j)
            xi += Polynomial::variable(d, j, b) * linv.at(i, j);
        xi += Polynomial::constant(d, -linv.mul_vec(shift)[i]);
        psi.push_back(xi);
    }
    for (int pass = 0; pass < degree; ++pass) {
        std::vector<Polynomial> rhs;
        rhs.reserve(d);
        for (int j = 0; j < d; ++j)
            rhs.push_back((Polynomial::variable(d, j, b) - Polynomial::constant(d, shift[j]) -
                           substitute(higher[j], psi))
                              .truncate_degree(degree));
        std::vector<Polynomial> next;
        next.reserve(d);
        for (int i = 0; i < d; ++i) {
            Polynomial acc(d, b);
            for (int j = 0; j < d; ++j) acc += rhs[j] * linv.at(i, j);
            next.push_back(acc.truncate_degree(degree));
        }
        if (next == psi) break;
        psi = std::move(next);
    }
    return FormalDiffeo(std::move(psi));
}

Integrand transform_integrand(const Integrand& integrand, const FormalDiffeo& phi,
                              int degree_cap) {
    if (phi.dim() != integrand.dim()) throw DimensionMismatch("diffeo dimension");
    Polynomial new_action = substitute(integrand.action, phi.components());
    Polynomial jac = phi.jacobian_det();
    HbarGradedSeries new_obs(integrand.dim(), integrand.backend(),
                             integrand.observable.order());
    for (const auto& [g, poly] : integrand.observable.grades()) {
        Polynomial composed = substitute(poly, phi.components()) * jac;
        if (degree_cap >= 0) composed = composed.truncate_degree(degree_cap);
        new_obs.set(g, composed);
    }
    if (degree_cap >= 0) new_action = new_action.truncate_degree(degree_cap);
    return Integrand(std::move(new_action), std::move(new_obs));
}

Integrand total_derivative(const Integrand& integrand, int var) {
    if (var < 0 || var >= integrand.dim()) throw DimensionMismatch("derivative index");
    Polynomial ds = integrand.action.derivative(var);
    HbarGradedSeries lhs = integrand.observable.derivative(var);
    HbarGradedSeries rhs = integrand.observable.mul_poly(ds).shift_grade(-2);
    return Integrand(integrand.action, lhs - rhs);
}

bool check_schwinger_dyson(const Integrand& integrand, int var,
                           const std::vector<Coefficient>& x0, int N,
                           const WickOptions& opts) {
    WickSeries w = wick_expand(total_derivative(integrand, var), x0, N, opts);
    return w.all_zero();
}

Polynomial divergence(const std::vector<Polynomial>& v) {
    if (v.empty()) throw DimensionMismatch("empty vector field");
    const int d = static_cast<int>(v.size());
    Polynomial acc(d, v.front().backend());
    for (int i = 0; i < d; ++i) {
        if (v[i].dim() != d) throw DimensionMismatch("vector field component dimension");
        acc += v[i].derivative(i);
    }
    return acc;
}

AuxiliaryElimination eliminate_auxiliary(const Matrix& t, const std::vector<Polynomial>& v,
                                         const Coefficient& c, int N,
                                         const WickOptions& opts) {
    const int d = t.rows();
    const Backend b = t.backend();
    if (t.cols() != d || static_cast<int>(v.size()) != d)
        throw DimensionMismatch("eliminate_auxiliary shapes");
    if (c.is_zero()) throw Error("eliminate_auxiliary: c must be nonzero");
    if (t.determinant().is_zero()) throw SingularMatrix("T is not invertible");
    for (const auto& va : v) {
        if (va.dim() != d) throw DimensionMismatch("V component dimension");
        auto parts = va.homogeneous_parts();
        for (const auto& [k, part] : parts)
            if (k < 2 && !part.is_zero())
                throw VHasLowDegree("V must have no constant or linear part");
    }

    // w_a(x) = (T x)_a + V_a(x)
    std::vector<Polynomial> w;
    w.reserve(d);
    for (int a = 0; a < d; ++a) {
        Polynomial wa = v[a];
        for (int j = 0; j < d; ++j)
            wa += Polynomial::variable(d, j, b) * t.at(a, j);
        w.push_back(std::move(wa));
    }

    Polynomial s_second(d, b);
    for (int a = 0; a < d; ++a) s_second += w[a] * w[a];
    s_second = s_second * (c + c).inverse();

    // first-order action on (x, y): -(c/2) <y,y> - <w(x), y>
    const int dd = 2 * d;
    std::vector<Polynomial> lift;
    lift.reserve(d);
    for (int j = 0; j < d; ++j) lift.push_back(Polynomial::variable(dd, j, b));
    Polynomial s_first(dd, b);
    Coefficient half = from_int(1, b) / from_int(2, b);
    for (int a = 0; a < d; ++a) {
        Polynomial ya = Polynomial::variable(dd, d + a, b);
        s_first -= ya * ya * (c * half);
        s_first -= substitute(w[a], lift) * ya;
    }

    std::vector<Coefficient> origin_d(d, Coefficient::zero(b));
    std::vector<Coefficient> origin_2d(dd, Coefficient::zero(b));
    AuxiliaryElimination out{
        wick_expand(Integrand::unit(s_second), origin_d, N, opts),
        wick_expand(Integrand::unit(s_first), origin_2d, N, opts),
    };
    return out;
}

}  // namespace wicklab
