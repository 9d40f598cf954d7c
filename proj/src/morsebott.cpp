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

#include "wicklab/morsebott.hpp"

#include <cmath>

namespace wicklab {

namespace {

using cxd = std::complex<double>;

Polynomial fconst(int dim, double v) {
    return Polynomial::constant(dim, Coefficient::floating(v));
}

}  // namespace

Fibration Fibration::make(int dim, double theta_lo, double theta_hi, bool periodic,
                          ChartFn chart) {
    if (dim < 2) throw DimensionMismatch("fibration needs dim >= 2");
    Fibration f;
    f.dim_ = dim;
    f.lo_ = theta_lo;
    f.hi_ = theta_hi;
    f.periodic_ = periodic;
    f.chart_ = std::move(chart);
    return f;
}

Fibration Fibration::radial_circle(double radius) {
    return make(2, 0.0, 2.0 * M_PI, true, [radius](double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        FiberChart ch;
        // embed(v) = (radius + v) (cos, sin)
        Polynomial v = Polynomial::variable(1, 0, Backend::Float);
        ch.embed = {fconst(1, radius * c) + v * Coefficient::floating(c),
                    fconst(1, radius * s) + v * Coefficient::floating(s)};
        ch.theta_tangent = {fconst(1, -radius * s) + v * Coefficient::floating(-s),
                            fconst(1, radius * c) + v * Coefficient::floating(c)};
        return ch;
    });
}

Fibration Fibration::sheared_circle(double radius, double shear) {
    return make(2, 0.0, 2.0 * M_PI, true, [radius, shear](double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        // fiber direction u = n + shear t with n the outward normal and t
        // the unit tangent; u' = t - shear n
        double ux = c - shear * s, uy = s + shear * c;
        double vx = -s - shear * c, vy = c - shear * s;
        FiberChart ch;
        Polynomial v = Polynomial::variable(1, 0, Backend::Float);
        ch.embed = {fconst(1, radius * c) + v * Coefficient::floating(ux),
                    fconst(1, radius * s) + v * Coefficient::floating(uy)};
        ch.theta_tangent = {fconst(1, -radius * s) + v * Coefficient::floating(vx),
                            fconst(1, radius * c) + v * Coefficient::floating(vy)};
        return ch;
    });
}

Fibration Fibration::axis_line(int dim, int base_var, double lo, double hi) {
    if (base_var < 0 || base_var >= dim) throw DimensionMismatch("base variable index");
    return make(dim, lo, hi, false, [dim, base_var](double theta) {
        FiberChart ch;
        int m = dim - 1;
        int fiber_slot = 0;
        for (int i = 0; i < dim; ++i) {
            if (i == base_var) {
                ch.embed.push_back(fconst(m, theta));
                ch.theta_tangent.push_back(fconst(m, 1.0));
            } else {
                ch.embed.push_back(Polynomial::variable(m, fiber_slot++, Backend::Float));
                ch.theta_tangent.push_back(Polynomial::zero(m, Backend::Float));
            }
        }
        return ch;
    });
}

Fibration Fibration::precomposed(const FormalDiffeo& phi) const {
    if (phi.dim() != dim_) throw DimensionMismatch("diffeo dimension");
    std::vector<Polynomial> comps;
    for (const auto& c : phi.components()) comps.push_back(c.to_float());
    FormalDiffeo fphi(comps);
    ChartFn base = chart_;
    int d = dim_;
    return make(dim_, lo_, hi_, periodic_, [base, fphi, d](double theta) {
        FiberChart ch = base(theta);
        FiberChart out;
        out.embed.reserve(d);
        out.theta_tangent.reserve(d);
        for (int i = 0; i < d; ++i)
            out.embed.push_back(substitute(fphi.components()[i], ch.embed));
        // velocity pushes forward through the Jacobian of phi at embed(v)
        for (int i = 0; i < d; ++i) {
            Polynomial acc(d - 1, Backend::Float);
            for (int j = 0; j < d; ++j) {
                Polynomial dij = substitute(fphi.components()[i].derivative(j), ch.embed);
                acc += dij * ch.theta_tangent[j];
            }
            out.theta_tangent.push_back(acc);
        }
        return out;
    });
}

std::vector<double> Fibration::base_point(double theta) const {
    FiberChart ch = chart_(theta);
    std::vector<std::complex<double>> zero(static_cast<std::size_t>(fiber_dim()), 0.0);
    std::vector<double> p;
    p.reserve(dim_);
    for (const auto& e : ch.embed) p.push_back(e.evaluate_c(zero).real());
    return p;
}

std::complex<double> MorseBottSeries::evaluate_numeric(std::complex<double> hbar,
                                                       int through_order) const {
    cxd sum = 0.0;
    for (int k = 0; k <= std::min<int>(through_order, order); ++k)
        sum += weighted[static_cast<std::size_t>(k)] * std::pow(hbar, k);
    return std::exp(-constant_value / hbar) * std::pow(std::sqrt(hbar), fiber_dim) * sum;
}

WickSeries fiber_wick_expand(const Integrand& integrand, const Fibration& fib, double theta,
                             int N, double tol) {
    if (integrand.dim() != fib.dim()) throw DimensionMismatch("fibration dimension");
    Integrand in(integrand.action.to_float(), integrand.observable.to_float());

    FiberChart ch = fib.chart(theta);
    const int d = fib.dim();
    const int m = fib.fiber_dim();

    // the point must sit on the critical set
    std::vector<double> p = fib.base_point(theta);
    std::vector<std::complex<double>> pc(p.begin(), p.end());
    for (int i = 0; i < d; ++i) {
        double gi = std::abs(in.action.derivative(i).evaluate_c(pc));
        if (gi > tol) throw NotOnZ("gradient of S does not vanish at the base point");
    }

    // pull back the action and observable to the fiber
    Polynomial s_fib = substitute(in.action, ch.embed);

    // chart Jacobian det[theta_tangent | d embed / dv], orientation-fixed
    std::vector<std::vector<Polynomial>> jac(d);
    for (int i = 0; i < d; ++i) {
        jac[i].push_back(ch.theta_tangent[i]);
        for (int k = 0; k < m; ++k) jac[i].push_back(ch.embed[i].derivative(k));
    }
    Polynomial volume = polynomial_matrix_det(jac);
    std::vector<std::complex<double>> vzero(static_cast<std::size_t>(m), 0.0);
    double j0 = volume.evaluate_c(vzero).real();
    if (std::abs(j0) < 1e-12) throw DegenerateFiberHessian("chart is degenerate at v = 0");
    if (j0 < 0.0) volume = -volume;

    HbarGradedSeries f_fib(m, Backend::Float, in.observable.order());
    for (const auto& [g, poly] : in.observable.grades())
        f_fib.add_at(g, substitute(poly, ch.embed) * volume);

    try {
        return wick_expand(Integrand(std::move(s_fib), std::move(f_fib)),
                           std::vector<Coefficient>(static_cast<std::size_t>(m),
                                                    Coefficient::floating(0.0)),
                           N);
    } catch (const SingularHessian&) {
        throw DegenerateFiberHessian("fiber Hessian is singular");
    } catch (const NotCritical&) {
        throw NotOnZ("fiber gradient does not vanish at the base point");
    }
}

void gauss_legendre(int n, double lo, double hi, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            double dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        double dp = n * (x * p0 - p1) / (x * x - 1.0);
        nodes[i] = 0.5 * (hi - lo) * x + 0.5 * (hi + lo);
        weights[i] = (hi - lo) / ((1.0 - x * x) * dp * dp);
    }
}

MorseBottSeries wick_expand_morsebott(const Integrand& integrand, const Fibration& fib, int N,
                                      int nodes, double tol) {
    std::vector<double> theta(static_cast<std::size_t>(nodes));
    std::vector<double> weight(static_cast<std::size_t>(nodes));
    if (fib.periodic()) {
        double width = fib.theta_hi() - fib.theta_lo();
        for (int j = 0; j < nodes; ++j) {
            theta[j] = fib.theta_lo() + width * j / nodes;
            weight[j] = width / nodes;
        }
    } else {
        gauss_legendre(nodes, fib.theta_lo(), fib.theta_hi(), theta, weight);
    }

    const int m = fib.fiber_dim();
    std::vector<WickSeries> per_node(static_cast<std::size_t>(nodes),
                                     WickSeries{});
    parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t j) {
        per_node[j] = fiber_wick_expand(integrand, fib, theta[j], N, tol);
    });

    double c_value = per_node[0].s0.to_complex().real();
    for (const auto& w : per_node) {
        cxd s0 = w.s0.to_complex();
        if (std::abs(s0 - c_value) > tol)
            throw NonConstantActionOnZ("S is not constant along Z");
    }

    MorseBottSeries out;
    out.constant_value = c_value;
    out.fiber_dim = m;
    out.order = N;
    out.nodes = nodes;
    out.rule = fib.periodic() ? "trapezoid" : "gauss-legendre";
    out.raw.assign(static_cast<std::size_t>(N + 1), 0.0);
    out.weighted.assign(static_cast<std::size_t>(N + 1), 0.0);
    for (int j = 0; j < nodes; ++j) {
        cxd det_a = per_node[j].det_a.to_complex();
        cxd pref = std::pow(std::sqrt(2.0 * M_PI / det_a), m);
        for (int k = 0; k <= N; ++k) {
            cxd ck = per_node[j].c(k).to_complex();
            out.raw[k] += weight[j] * ck;
            out.weighted[k] += weight[j] * pref * ck;
        }
    }
    return out;
}

bool check_fibration_independence(const Integrand& integrand, const Fibration& fib_a,
                                  const Fibration& fib_b, int N, int nodes, double tol) {
    MorseBottSeries a = wick_expand_morsebott(integrand, fib_a, N, nodes);
    MorseBottSeries b = wick_expand_morsebott(integrand, fib_b, N, nodes);
    if (std::abs(a.constant_value - b.constant_value) > tol) return false;
    for (int k = 0; k <= N; ++k) {
        double scale = std::max({1.0, std::abs(a.weighted[k]), std::abs(b.weighted[k])});
        if (std::abs(a.weighted[k] - b.weighted[k]) > tol * scale) return false;
    }
    return true;
}

}  // namespace wicklab
