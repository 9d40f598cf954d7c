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

#include "wicklab/lattice.hpp"

namespace wicklab {

int LatticeSpec::total_sites() const {
    int n = sites_per_side;
    return dim == 1 ? n : n * n;
}

Matrix lattice_laplacian(const LatticeSpec& spec) {
    if (spec.dim != 1 && spec.dim != 2) throw Error("lattice dimension must be 1 or 2");
    if (spec.sites_per_side < 2) throw Error("need at least two sites per side");
    if (!spec.periodic) throw Error("only periodic boundaries are supported");
    const int n = spec.sites_per_side;
    const int total = spec.total_sites();
    const Backend b = spec.spacing.backend();
    // (dx)^dim weight from the inner product times (dx)^{-2} from the
    // second difference
    Coefficient scale = spec.spacing.pow(spec.dim - 2);
    Matrix q(total, total, b);
    auto add = [&](int site, int nb) {
        q.at(site, site) += scale;
        q.at(site, nb) -= scale;
    };
    if (spec.dim == 1) {
        for (int i = 0; i < n; ++i) {
            add(i, (i + 1) % n);
            add(i, (i + n - 1) % n);
        }
    } else {
        auto idx = [n](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                add(idx(i, j), idx(i + 1, j));
                add(idx(i, j), idx(i - 1, j));
                add(idx(i, j), idx(i, j + 1));
                add(idx(i, j), idx(i, j - 1));
            }
    }
    return q;
}

namespace {

Matrix all_ones(int n, Backend b) {
    Matrix j(n, n, b);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) j.at(r, c) = Coefficient::one(b);
    return j;
}

}  // namespace

Propagator zero_mode_propagator(const Matrix& q) {
    const int n = q.rows();
    const Backend b = q.backend();
    if (!q.is_symmetric()) throw WrongKernel("quadratic form is not symmetric");
    std::vector<Coefficient> ones(n, Coefficient::one(b));
    for (const auto& v : q.mul_vec(ones))
        if (!v.is_zero()) throw WrongKernel("constants are not in the kernel");
    Coefficient nc = b == Backend::Exact ? Coefficient::exact(n)
                                         : Coefficient::floating(static_cast<double>(n));
    Matrix j = all_ones(n, b);
    Matrix regularized = q + j;  // invertible iff the kernel is exactly the constants
    Matrix inv = [&] {
        try {
            return regularized.inverse();
        } catch (const SingularMatrix&) {
            throw WrongKernel("kernel is larger than the constants");
        }
    }();
    Matrix g = inv - j.scale((nc * nc).inverse());
    // defining property: G Q = I - J/n
    Matrix projector = Matrix::identity(n, b) - j.scale(nc.inverse());
    if (!(g * q == projector)) throw WrongKernel("generalized inverse verification failed");
    return Propagator::supplied(std::move(g), "zero-mode generalized inverse");
}

Coefficient pseudo_determinant(const Matrix& q) {
    const int n = q.rows();
    const Backend b = q.backend();
    Coefficient nc = b == Backend::Exact ? Coefficient::exact(n)
                                         : Coefficient::floating(static_cast<double>(n));
    // det(Q + J) factors as (pseudo-det) * (eigenvalue n on the constants)
    Matrix regularized = q + all_ones(n, b);
    return regularized.determinant() / nc;
}

namespace {

// Power sums p_j = tr((3 P D P)^j) = 3^j tr((D P)^j) with D = diag(phi_i^2)
// and P = I - J/n, as exact polynomials in the site variables.
Polynomial trace_power(const Matrix& p, int j, int total, Backend b) {
    // sum over index cycles a_1 .. a_j of prod phi_{a_m}^2 P_{a_m a_{m+1}}
    Polynomial acc(total, b);
    std::vector<int> idx(static_cast<std::size_t>(j), 0);
    while (true) {
        Coefficient weight = Coefficient::one(b);
        for (int m = 0; m < j; ++m) weight *= p.at(idx[m], idx[(m + 1) % j]);
        if (!weight.is_zero()) {
            Exponents e(total, 0);
            for (int m = 0; m < j; ++m) e[idx[m]] += 2;
            acc.add_term(e, weight);
        }
        int k = 0;
        while (k < j && ++idx[k] == total) idx[k++] = 0;
        if (k == j) break;
    }
    return acc;
}

struct DemoParts {
    HbarGradedSeries graded;      // full graded integrand
    Polynomial obs_grade2;        // Jacobian observable at grade 2
    Polynomial vertex_grade2;     // quartic vertex at grade 2
    Polynomial naive_obs_grade2;  // product-observable version
};

DemoParts build_demo(const LatticeSpec& spec, const Matrix& q, int order) {
    const int total = spec.total_sites();
    const Backend b = q.backend();

    // transformed action interaction: -(phi, Delta phi^3) - (1/2)(phi^3, Delta phi^3)
    std::vector<Polynomial> cubes;
    cubes.reserve(total);
    for (int i = 0; i < total; ++i) {
        Exponents e(total, 0);
        e[i] = 3;
        cubes.push_back(Polynomial::monomial(total, e, Coefficient::one(b)));
    }
    Polynomial quartic(total, b);   // (phi, Delta phi^3)
    Polynomial sextic(total, b);    // (phi^3, Delta phi^3)
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j) {
            if (q.at(i, j).is_zero()) continue;
            Exponents e(total, 0);
            e[i] += 1;
            e[j] += 3;
            quartic.add_term(e, q.at(i, j));
            sextic += cubes[i] * cubes[j] * q.at(i, j);
        }
    Coefficient half = Coefficient::one(b) / (Coefficient::one(b) + Coefficient::one(b));
    HbarGradedSeries interaction(total, b);
    interaction.set(2, -quartic);
    interaction.set(4, sextic * (-half));

    // Jacobian of phi -> phi + phi^3 on the mean-zero field space:
    // det(I + 3 P D P) via Newton's identities, truncated at hbar^order.
    const int n = total;
    Coefficient nc = b == Backend::Exact ? Coefficient::exact(n)
                                         : Coefficient::floating(static_cast<double>(n));
    Matrix projector = Matrix::identity(n, b) - all_ones(n, b).scale(nc.inverse());
    std::vector<Polynomial> psums;  // p_1..p_order
    Coefficient three = b == Backend::Exact ? Coefficient::exact(3) : Coefficient::floating(3.0);
    for (int j = 1; j <= order; ++j)
        psums.push_back(trace_power(projector, j, total, b) * three.pow(j));
    std::vector<Polynomial> esyms{Polynomial::constant(total, Coefficient::one(b))};
    for (int k = 1; k <= order; ++k) {
        Polynomial ek(total, b);
        for (int m = 1; m <= k; ++m) {
            Polynomial term = esyms[static_cast<std::size_t>(k - m)] * psums[m - 1];
            if (m % 2 == 0) ek -= term;
            else ek += term;
        }
        Coefficient kc = b == Backend::Exact ? Coefficient::exact(k)
                                             : Coefficient::floating(static_cast<double>(k));
        esyms.push_back(ek * kc.inverse());
    }
    HbarGradedSeries observable(total, b, 2 * order);
    for (int k = 0; k <= order; ++k) observable.set(2 * k, esyms[static_cast<std::size_t>(k)]);

    DemoParts parts{
        graded_exp(interaction, 2 * order).mul(observable, 2 * order),
        esyms.size() > 1 ? esyms[1] : Polynomial::zero(total, b),
        -quartic,
        Polynomial::zero(total, b),
    };
    // naive product observable Pi(1 + 3 phi_i^2) at grade 2: 3 sum phi_i^2
    for (int i = 0; i < total; ++i) {
        Exponents e(total, 0);
        e[i] = 2;
        parts.naive_obs_grade2.add_term(e, three);
    }
    return parts;
}

LatticeReport run_demo(const LatticeSpec& spec, int order, const Coefficient* kernel_shift,
                       const WickOptions& opts) {
    if (order < 1 || order > 3) throw Error("cancellation demo supports orders 1..3");
    Matrix q = lattice_laplacian(spec);
    const int total = spec.total_sites();
    if (total > 16)
        throw DegreeCapExceeded("lattice too large for the contraction degree cap");
    Propagator g = zero_mode_propagator(q);
    if (kernel_shift != nullptr) {
        Matrix shifted = g.matrix() + all_ones(total, q.backend()).scale(*kernel_shift);
        g = Propagator::supplied(std::move(shifted), "kernel-shifted generalized inverse");
    }

    DemoParts parts = build_demo(spec, q, order);
    const Backend b = q.backend();
    WickSeries w = wick_contract_graded(parts.graded, g, Coefficient::zero(b),
                                        Coefficient::zero(b), total, order, opts);

    LatticeReport rep;
    rep.spec = spec;
    rep.order = order;
    for (int k = 1; k <= order; ++k) rep.totals.push_back(w.c(k));
    rep.observable_diagram = wick_value(parts.obs_grade2, g, opts);
    rep.vertex_diagram = wick_value(parts.vertex_grade2, g, opts);
    rep.naive_observable_diagram = wick_value(parts.naive_obs_grade2, g, opts);
    rep.naive_total = rep.naive_observable_diagram + rep.vertex_diagram;
    rep.pseudo_det = pseudo_determinant(q);
    return rep;
}

}  // namespace

bool LatticeReport::cancels() const {
    for (const auto& c : totals)
        if (!c.is_zero()) return false;
    return true;
}

LatticeReport run_cancellation_demo(const LatticeSpec& spec, int order,
                                    const WickOptions& opts) {
    return run_demo(spec, order, nullptr, opts);
}

LatticeReport run_cancellation_demo_shifted(const LatticeSpec& spec, int order,
                                            const Coefficient& kernel_shift,
                                            const WickOptions& opts) {
    return run_demo(spec, order, &kernel_shift, opts);
}

}  // namespace wicklab
