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

#include "wicklab/wick.hpp"

#include <numeric>

namespace wicklab {

Coefficient QuadraticForm::pair(const std::vector<Coefficient>& u,
                                const std::vector<Coefficient>& v) const {
    std::vector<Coefficient> av = a_.mul_vec(v);
    Coefficient acc = Coefficient::zero(a_.backend());
    for (int i = 0; i < dim(); ++i) acc += u[i] * av[i];
    return acc;
}

Polynomial QuadraticForm::half_quadratic() const {
    int d = dim();
    Backend b = a_.backend();
    Polynomial q(d, b);
    Coefficient half = b == Backend::Exact ? Coefficient::exact(1, 2)
                                           : Coefficient::floating(0.5);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (a_.at(i, j).is_zero()) continue;
            Exponents e(d, 0);
            ++e[i];
            ++e[j];
            q.add_term(e, half * a_.at(i, j));
        }
    }
    return q;
}

QuadraticForm invert_symmetric(const Matrix& a) {
    if (!a.is_symmetric()) throw Error("invert_symmetric: matrix is not symmetric");
    Coefficient det = a.determinant();
    if (det.is_zero()) throw SingularMatrix("singular quadratic form (degenerate Hessian)");
    return QuadraticForm(a, a.inverse(), det);
}

Propagator Propagator::from_form(const QuadraticForm& form) {
    Propagator p(form.inverse());
    p.supplied_ = false;
    return p;
}

Propagator Propagator::supplied(Matrix g, std::string description) {
    if (!g.is_symmetric()) throw Error("propagator must be symmetric");
    Propagator p(std::move(g));
    p.supplied_ = true;
    p.desc_ = std::move(description);
    return p;
}

namespace {

// First-slot pairing recursion on an exponent multiset.
Coefficient wick_monomial(const Exponents& e, const Matrix& g,
                          std::map<Exponents, Coefficient>& memo) {
    int deg = std::accumulate(e.begin(), e.end(), 0);
    Backend b = g.backend();
    if (deg == 0) return Coefficient::one(b);
    if (deg % 2 != 0) return Coefficient::zero(b);
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;

    int first = 0;
    while (e[first] == 0) ++first;
    Exponents rest = e;
    --rest[first];
    Coefficient acc = Coefficient::zero(b);
    for (int v = 0; v < static_cast<int>(e.size()); ++v) {
        if (rest[v] == 0 || g.at(first, v).is_zero()) continue;
        Coefficient mult = b == Backend::Exact
                               ? Coefficient::exact(rest[v])
                               : Coefficient::floating(static_cast<double>(rest[v]));
        Exponents sub = rest;
        --sub[v];
        acc += mult * g.at(first, v) * wick_monomial(sub, g, memo);
    }
    memo.emplace(e, acc);
    return acc;
}

// Literal sum over perfect matchings of the slot list.
Coefficient brute_slots(std::vector<int>& slots, const Matrix& g) {
    Backend b = g.backend();
    if (slots.empty()) return Coefficient::one(b);
    Coefficient acc = Coefficient::zero(b);
    int first = slots[0];
    for (std::size_t j = 1; j < slots.size(); ++j) {
        int partner = slots[j];
        std::vector<int> rest;
        rest.reserve(slots.size() - 2);
        for (std::size_t k = 1; k < slots.size(); ++k)
            if (k != j) rest.push_back(slots[k]);
        acc += g.at(first, partner) * brute_slots(rest, g);
    }
    return acc;
}

void check_dim(const Polynomial& p, const Propagator& g) {
    if (p.dim() != g.dim()) throw DimensionMismatch("polynomial/propagator dimensions differ");
    if (p.backend() != g.matrix().backend())
        throw BackendMismatch("polynomial/propagator backends differ");
}

}  // namespace

Coefficient wick_value(const Polynomial& p, const Propagator& g, const WickOptions& opts) {
    check_dim(p, g);
    if (p.total_degree() > opts.memo_degree_cap)
        throw DegreeCapExceeded("monomial degree exceeds memoized cap");
    std::map<Exponents, Coefficient> memo;
    Coefficient acc = Coefficient::zero(p.backend());
    for (const auto& [e, c] : p.terms()) acc += c * wick_monomial(e, g.matrix(), memo);
    return acc;
}

Coefficient wick_value_bruteforce(const Polynomial& p, const Propagator& g,
                                  const WickOptions& opts) {
    check_dim(p, g);
    Coefficient acc = Coefficient::zero(p.backend());
    for (const auto& [e, c] : p.terms()) {
        int deg = std::accumulate(e.begin(), e.end(), 0);
        if (deg > opts.brute_degree_cap)
            throw DegreeCapExceeded("monomial degree exceeds brute-force cap");
        if (deg % 2 != 0) continue;
        std::vector<int> slots;
        slots.reserve(deg);
        for (int v = 0; v < p.dim(); ++v)
            for (int k = 0; k < e[v]; ++k) slots.push_back(v);
        acc += c * brute_slots(slots, g.matrix());
    }
    return acc;
}

bool check_wick_ibp(const Polynomial& p, const QuadraticForm& a, int i,
                    const WickOptions& opts) {
    if (i < 0 || i >= a.dim()) throw DimensionMismatch("ibp index out of range");
    Polynomial lowering = p.derivative(i);
    Polynomial raising(p.dim(), p.backend());
    for (int j = 0; j < a.dim(); ++j) {
        if (a.matrix().at(i, j).is_zero()) continue;
        raising += (Polynomial::variable(p.dim(), j, p.backend()) * p) * a.matrix().at(i, j);
    }
    Propagator g = Propagator::from_form(a);
    return wick_value(lowering - raising, g, opts).is_zero();
}

}  // namespace wicklab
