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

#include "wicklab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wicklab {

namespace {

using cxd = std::complex<double>;

/// Compiled integrand f(x; hbar) e^{-S(x)/hbar}.
struct NumericIntegrand {
    CompiledPoly action;
    std::vector<std::pair<int, CompiledPoly>> observable;
    cxd hbar, sqrt_hbar;

    NumericIntegrand(const Integrand& in, cxd h)
        : action(in.action), hbar(h), sqrt_hbar(std::sqrt(h)) {
        for (const auto& [g, p] : in.observable.grades())
            observable.emplace_back(g, CompiledPoly(p));
    }

    cxd eval(std::span<const double> x) const {
        cxd f = 0.0;
        for (const auto& [g, p] : observable) f += std::pow(sqrt_hbar, g) * p.eval(x);
        return f * std::exp(-action.eval(x) / hbar);
    }
};

struct SimpsonState {
    const std::function<cxd(double)>& f;
    int min_depth;
    int max_depth;
    double err = 0.0;

    cxd rec(double a, double b, cxd fa, cxd fm, cxd fb, cxd whole, double tol, int depth) {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        cxd flm = f(lm), frm = f(rm);
        if (!std::isfinite(flm.real()) || !std::isfinite(flm.imag()) ||
            !std::isfinite(frm.real()) || !std::isfinite(frm.imag()))
            throw QuadratureFailure("non-finite integrand value");
        cxd left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        cxd right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        cxd delta = left + right - whole;
        if (depth >= min_depth && (std::abs(delta) <= 15.0 * tol || depth >= max_depth)) {
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        return rec(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               rec(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

IntegralResult integrate_1d(const std::function<cxd(double)>& f, double lo, double hi,
                            double abs_tol, int min_depth) {
    if (!(hi > lo)) throw QuadratureFailure("empty integration interval");
    SimpsonState st{f, min_depth, 42};
    double m = 0.5 * (lo + hi);
    cxd fa = f(lo), fm = f(m), fb = f(hi);
    cxd whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    cxd v = st.rec(lo, hi, fa, fm, fb, whole, abs_tol, 0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw QuadratureFailure("non-finite integrand");
    return {v, st.err};
}

namespace {

// Nested adaptive Simpson over a box; integrates the trailing dimensions for
// each sample of the leading one.
IntegralResult integrate_box(const NumericIntegrand& g, const Box& box, double abs_tol) {
    int d = box.dim();
    std::function<IntegralResult(std::vector<double>&, int, double)> nest =
        [&](std::vector<double>& x, int k, double tol_k) -> IntegralResult {
        double width = box.hi[k] - box.lo[k];
        double inner_err = 0.0;
        std::function<cxd(double)> f;
        if (k + 1 == d) {
            f = [&](double t) {
                x[k] = t;
                return g.eval(x);
            };
        } else {
            f = [&](double t) {
                x[k] = t;
                IntegralResult inner = nest(x, k + 1, tol_k / (width * 4.0));
                inner_err = std::max(inner_err, inner.error_estimate);
                return inner.value;
            };
        }
        IntegralResult r = integrate_1d(f, box.lo[k], box.hi[k], tol_k, d >= 3 ? 5 : 6);
        r.error_estimate += inner_err * width;
        return r;
    };
    std::vector<double> x(d, 0.0);
    return nest(x, 0, abs_tol);
}

double grid_max(const NumericIntegrand& g, const Box& box, int per_dim, bool boundary_only) {
    int d = box.dim();
    std::vector<int> idx(d, 0);
    std::vector<double> x(d);
    double best = 0.0;
    while (true) {
        bool on_boundary = false;
        for (int i = 0; i < d; ++i) {
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (per_dim - 1);
            if (idx[i] == 0 || idx[i] == per_dim - 1) on_boundary = true;
        }
        if (!boundary_only || on_boundary) best = std::max(best, std::abs(g.eval(x)));
        int i = 0;
        while (i < d && ++idx[i] == per_dim) idx[i++] = 0;
        if (i == d) break;
    }
    return best;
}

}  // namespace

IntegralResult integrate_numeric(const Integrand& integrand, cxd hbar,
                                 std::optional<Box> domain, double tol) {
    if (integrand.dim() > 3) throw Error("integrate_numeric supports d <= 3");
    if (hbar.real() <= 0.0) throw Error("integrate_numeric requires Re hbar > 0");
    NumericIntegrand g(integrand, hbar);
    Box box;
    if (domain) {
        box = *domain;
    } else {
        int d = integrand.dim();
        double L = 1.0;
        const int per_dim = d == 1 ? 65 : 17;
        for (int iter = 0;; ++iter) {
            if (iter > 80 || L > 1e6) throw NoDecay("integrand does not decay on growing boxes");
            box.lo.assign(d, -L);
            box.hi.assign(d, L);
            double inner = grid_max(g, box, per_dim, false);
            double edge = grid_max(g, box, per_dim, true);
            if (!std::isfinite(inner) || !std::isfinite(edge))
                throw NoDecay("integrand grows on the sampled boxes");
            if (inner > 0.0 && edge <= inner * tol * 1e-2) break;
            L *= 1.4;
        }
    }
    double pilot = grid_max(g, box, 9, false);
    double volume = 1.0;
    for (int i = 0; i < box.dim(); ++i) volume *= box.hi[i] - box.lo[i];
    double abs_tol = tol * std::max(pilot * volume * 1e-3, 1e-280);
    IntegralResult r = integrate_box(g, box, abs_tol);
    // second pass once the magnitude of the result is known
    double target = tol * std::abs(r.value);
    if (target > 0.0 && target < 0.3 * abs_tol) r = integrate_box(g, box, target);
    return r;
}

namespace {

double fit_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    double n = static_cast<double>(logx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < logx.size(); ++i) {
        sx += logx[i];
        sy += logy[i];
        sxx += logx[i] * logx[i];
        sxy += logx[i] * logy[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

AsymptoticsReport asymptotics_sweep(const Integrand& integrand,
                                    const std::vector<Coefficient>& x0, const WickSeries& w,
                                    const std::vector<double>& grid, int N, double tol) {
    if (grid.size() < 2) throw Error("asymptotics grid needs at least two points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] < grid[i - 1])) throw Error("hbar grid must be strictly decreasing");
    (void)x0;

    AsymptoticsReport rep;
    rep.grid = grid;
    rep.max_order = N;
    rep.values.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        rep.values[i] = integrate_numeric(integrand, grid[i], std::nullopt, tol).value;
    });

    rep.partial_sums.assign(N + 1, std::vector<cxd>(grid.size()));
    rep.remainders_abs.assign(N + 1, std::vector<double>(grid.size()));
    rep.remainders_rel.assign(N + 1, std::vector<double>(grid.size()));
    rep.slopes.assign(N + 1, 0.0);
    std::vector<double> logh;
    for (double h : grid) logh.push_back(std::log(h));
    for (int n = 0; n <= N; ++n) {
        std::vector<double> logr;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            cxd partial = w.evaluate_numeric(grid[i], n);
            rep.partial_sums[n][i] = partial;
            double rem = std::abs(rep.values[i] - partial);
            rep.remainders_abs[n][i] = rem;
            double pref = std::abs(w.prefactor_numeric(grid[i]));
            rep.remainders_rel[n][i] = rem / pref;
            logr.push_back(std::log(std::max(rem / pref, 1e-300)));
        }
        rep.slopes[n] = fit_slope(logh, logr);
    }
    return rep;
}

std::string AsymptoticsReport::to_csv() const {
    std::string out = "hbar,I_re,I_im";
    for (int n = 0; n <= max_order; ++n) {
        out += ",partial_sum_" + std::to_string(n) + "_re";
        out += ",partial_sum_" + std::to_string(n) + "_im";
    }
    for (int n = 0; n <= max_order; ++n) out += ",remainder_" + std::to_string(n);
    for (int n = 0; n <= max_order; ++n) out += ",remainder_rel_" + std::to_string(n);
    out += "\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof(buf), ",%.17g", v);
        out += buf;
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", grid[i]);
        out += buf;
        put(values[i].real());
        put(values[i].imag());
        for (int n = 0; n <= max_order; ++n) {
            put(partial_sums[n][i].real());
            put(partial_sums[n][i].imag());
        }
        for (int n = 0; n <= max_order; ++n) put(remainders_abs[n][i]);
        for (int n = 0; n <= max_order; ++n) put(remainders_rel[n][i]);
        out += "\n";
    }
    return out;
}

namespace {

double smooth_step(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// C-infinity cutoff: 1 on |u| <= 1, 0 on |u| >= 2.
double bump(double u) {
    double a = smooth_step(2.0 - std::abs(u));
    double b = smooth_step(std::abs(u) - 1.0);
    return a / (a + b);
}

cxd neville_at_zero(const std::vector<double>& nodes, std::vector<cxd> vals, double* err) {
    std::size_t n = nodes.size();
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = 0; i + level < n; ++i)
            vals[i] = (nodes[i + level] * vals[i] - nodes[i] * vals[i + 1]) /
                      (nodes[i + level] - nodes[i]);
    if (err) *err = n >= 2 ? std::abs(vals[0] - vals[1]) : 0.0;
    return vals[0];
}

}  // namespace

OscillatoryResult oscillatory_integrate_1d(const Integrand& integrand, double t, double delta,
                                           double eps, double tol) {
    if (integrand.dim() != 1) throw Error("oscillatory_integrate_1d supports d = 1 only");
    if (t == 0.0 || delta <= 0.0 || eps <= 0.0)
        throw Error("oscillatory regulators must be positive");
    cxd hbar(0.0, t);
    NumericIntegrand g(integrand, hbar);

    const int n_eps = 3, n_delta = 5;
    std::vector<cxd> per_eps(n_eps);
    std::vector<double> per_eps_err(n_eps);
    for (int k = 0; k < n_eps; ++k) {
        double ek = eps / std::pow(2.0, k);
        std::vector<double> deltas(n_delta);
        std::vector<cxd> vals(n_delta);
        for (int j = 0; j < n_delta; ++j) {
            double dj = delta / std::pow(2.0, j);
            deltas[j] = dj;
            auto f = [&](double x) {
                double p = bump(ek * x);
                if (p == 0.0) return cxd(0.0, 0.0);
                std::span<const double> xs(&x, 1);
                return p * g.eval(xs) * std::exp(-dj * x * x);
            };
            vals[j] = integrate_1d(f, -2.0 / ek, 2.0 / ek, tol * 0.1, 8).value;
        }
        per_eps[k] = neville_at_zero(deltas, vals, &per_eps_err[k]);
        if (!std::isfinite(per_eps[k].real()) || !std::isfinite(per_eps[k].imag()))
            throw ExtrapolationUnstable("non-finite regulated value");
        if (per_eps_err[k] > 1e-2 * (std::abs(per_eps[k]) + 1.0))
            throw ExtrapolationUnstable("damping limit is not converging");
    }
    double d1 = std::abs(per_eps[1] - per_eps[0]);
    double d2 = std::abs(per_eps[2] - per_eps[1]);
    double scale = std::abs(per_eps[2]) + 1.0;
    bool not_shrinking = d2 > 100.0 * tol * scale && d2 > 1.5 * d1;
    bool growing = std::abs(per_eps[2]) > 1.8 * std::abs(per_eps[1]) &&
                   std::abs(per_eps[1]) > 1.8 * std::abs(per_eps[0]) + 10.0 * tol;
    if (not_shrinking || growing)
        throw ExtrapolationUnstable("cutoff limit is not converging");
    OscillatoryResult out;
    out.value = per_eps[n_eps - 1];
    out.error_estimate = d2 + per_eps_err[n_eps - 1];
    return out;
}

}  // namespace wicklab
