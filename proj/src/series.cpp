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

#include "wicklab/series.hpp"

#include <algorithm>

namespace wicklab {

HbarGradedSeries HbarGradedSeries::from_polynomial(const Polynomial& p, int grade, int order) {
    HbarGradedSeries s(p.dim(), p.backend(), order);
    if (!p.is_zero() && grade <= order) s.grades_.emplace(grade, p);
    return s;
}

HbarGradedSeries HbarGradedSeries::from_scalar(int dim, const Coefficient& c, int grade,
                                               int order) {
    return from_polynomial(Polynomial::constant(dim, c), grade, order);
}

int HbarGradedSeries::min_grade() const {
    if (grades_.empty()) return saturating_add(order_, 1);
    return grades_.begin()->first;
}

Polynomial HbarGradedSeries::at(int grade) const {
    auto it = grades_.find(grade);
    return it == grades_.end() ? Polynomial::zero(dim_, backend_) : it->second;
}

void HbarGradedSeries::set(int grade, const Polynomial& p) {
    if (p.dim() != dim_) throw DimensionMismatch("series grade dimension");
    if (p.backend() != backend_) throw BackendMismatch("series grade backend");
    if (grade > order_) throw Error("grade beyond series truncation order");
    if (p.is_zero()) grades_.erase(grade);
    else grades_.insert_or_assign(grade, p);
}

void HbarGradedSeries::add_at(int grade, const Polynomial& p) {
    if (grade > order_) return;
    Polynomial sum = at(grade) + p;
    if (sum.is_zero()) grades_.erase(grade);
    else grades_.insert_or_assign(grade, std::move(sum));
}

void HbarGradedSeries::check_compatible(const HbarGradedSeries& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("series dimensions differ");
    if (backend_ != o.backend_) throw BackendMismatch("series backends differ");
}

HbarGradedSeries HbarGradedSeries::operator+(const HbarGradedSeries& o) const {
    check_compatible(o);
    HbarGradedSeries r(dim_, backend_, std::min(order_, o.order_));
    for (const auto& [g, p] : grades_)
        if (g <= r.order_) r.add_at(g, p);
    for (const auto& [g, p] : o.grades_)
        if (g <= r.order_) r.add_at(g, p);
    return r;
}

HbarGradedSeries HbarGradedSeries::operator-(const HbarGradedSeries& o) const {
    return *this + o.scale(-Coefficient::one(backend_));
}

HbarGradedSeries HbarGradedSeries::scale(const Coefficient& c) const {
    HbarGradedSeries r(dim_, backend_, order_);
    if (c.is_zero()) return r;
    for (const auto& [g, p] : grades_) r.grades_.emplace(g, p * c);
    return r;
}

HbarGradedSeries HbarGradedSeries::mul_poly(const Polynomial& p) const {
    HbarGradedSeries r(dim_, backend_, order_);
    if (p.is_zero()) return r;
    for (const auto& [g, q] : grades_) {
        Polynomial prod = q * p;
        if (!prod.is_zero()) r.grades_.emplace(g, std::move(prod));
    }
    return r;
}

HbarGradedSeries HbarGradedSeries::mul(const HbarGradedSeries& o, int N) const {
    check_compatible(o);
    // The product is trustworthy through min(N, a.order + min_grade(b),
    // b.order + min_grade(a)): grades beyond either bound would need terms
    // the truncated factors no longer carry.
    int bound = std::min(saturating_add(order_, o.min_grade()),
                         saturating_add(o.order_, min_grade()));
    int out_order = std::min(N, bound);
    HbarGradedSeries r(dim_, backend_, out_order);
    for (const auto& [ga, pa] : grades_) {
        for (const auto& [gb, pb] : o.grades_) {
            long g = static_cast<long>(ga) + gb;
            if (g > out_order) continue;
            r.add_at(static_cast<int>(g), pa * pb);
        }
    }
    return r;
}

HbarGradedSeries HbarGradedSeries::shift_grade(int k) const {
    HbarGradedSeries r(dim_, backend_, saturating_add(order_, k));
    for (const auto& [g, p] : grades_) r.grades_.emplace(g + k, p);
    return r;
}

HbarGradedSeries HbarGradedSeries::truncated(int N) const {
    HbarGradedSeries r(dim_, backend_, std::min(order_, N));
    for (const auto& [g, p] : grades_)
        if (g <= N) r.grades_.emplace(g, p);
    return r;
}

HbarGradedSeries HbarGradedSeries::derivative(int var) const {
    HbarGradedSeries r(dim_, backend_, order_);
    for (const auto& [g, p] : grades_) {
        Polynomial d = p.derivative(var);
        if (!d.is_zero()) r.grades_.emplace(g, std::move(d));
    }
    return r;
}

HbarGradedSeries HbarGradedSeries::inverse(int N) const {
    if (is_zero()) throw Error("inverse of zero series");
    if (min_grade() != 0) throw Error("series inverse requires lowest grade 0");
    Polynomial head = grades_.begin()->second;
    if (!head.is_constant()) throw Error("series inverse requires a scalar leading grade");
    Coefficient c0 = head.constant_term();
    if (c0.is_zero()) throw Error("series inverse requires invertible leading coefficient");
    int out_order = std::min(N, order_);
    // 1/(c0 (1 + r)) with r = s/c0 - 1 supported on grades >= 1:
    // expand the geometric series through the target order.
    HbarGradedSeries r = scale(c0.inverse());
    r.add_at(0, Polynomial::constant(dim_, -Coefficient::one(backend_)));
    HbarGradedSeries acc = from_scalar(dim_, Coefficient::one(backend_), 0, out_order);
    HbarGradedSeries pw = acc;
    int rmin = r.is_zero() ? out_order + 1 : r.min_grade();
    if (rmin < 1) throw Error("series inverse: non-scalar content at grade 0");
    for (int m = 1; static_cast<long>(m) * rmin <= out_order; ++m) {
        pw = pw.mul(r, out_order);
        if (pw.is_zero()) break;
        acc = acc + (m % 2 == 0 ? pw : pw.scale(-Coefficient::one(backend_)));
    }
    return acc.scale(c0.inverse()).truncated(out_order);
}

Polynomial HbarGradedSeries::at_hbar_one() const {
    Polynomial sum(dim_, backend_);
    for (const auto& [g, p] : grades_) sum += p;
    return sum;
}

std::complex<double> HbarGradedSeries::evaluate(std::span<const std::complex<double>> point,
                                                std::complex<double> hbar) const {
    std::complex<double> sqrth = std::sqrt(hbar);
    std::complex<double> acc = 0.0;
    for (const auto& [g, p] : grades_) acc += std::pow(sqrth, g) * p.evaluate_c(point);
    return acc;
}

bool HbarGradedSeries::operator==(const HbarGradedSeries& o) const {
    return dim_ == o.dim_ && backend_ == o.backend_ && order_ == o.order_ &&
           grades_ == o.grades_;
}

HbarGradedSeries HbarGradedSeries::to_float() const {
    if (backend_ == Backend::Float) return *this;
    HbarGradedSeries r(dim_, Backend::Float, order_);
    for (const auto& [g, p] : grades_) r.grades_.emplace(g, p.to_float());
    return r;
}

std::string HbarGradedSeries::str(const std::vector<std::string>& names) const {
    if (grades_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [g, p] : grades_) {
        if (!first) out += " + ";
        first = false;
        out += "h^{" + std::to_string(g) + "/2}*(" + p.str(names) + ")";
    }
    return out;
}

HbarGradedSeries regrade(const Polynomial& p, const std::vector<Coefficient>& center,
                         bool rescale) {
    Polynomial shifted = p.recenter(center);
    if (!rescale) return HbarGradedSeries::from_polynomial(shifted, 0);
    HbarGradedSeries s(p.dim(), p.backend());
    for (auto& [k, part] : shifted.homogeneous_parts()) s.set(k, part);
    return s;
}

HbarGradedSeries graded_exp(const HbarGradedSeries& s, int N) {
    if (!s.is_zero() && s.min_grade() < 1)
        throw Error("graded_exp requires strictly positive grades");
    int out_order = std::min(N, s.order());
    Backend b = s.backend();
    HbarGradedSeries acc =
        HbarGradedSeries::from_scalar(s.dim(), Coefficient::one(b), 0, out_order);
    if (s.is_zero()) return acc;
    HbarGradedSeries term = acc;
    Coefficient factorial = Coefficient::one(b);
    int smin = s.min_grade();
    for (int m = 1; static_cast<long>(m) * smin <= out_order; ++m) {
        term = term.mul(s, out_order);
        if (term.is_zero()) break;
        Coefficient mc = b == Backend::Exact ? Coefficient::exact(m)
                                             : Coefficient::floating(static_cast<double>(m));
        factorial *= mc;
        acc = acc + term.scale(factorial.inverse());
    }
    return acc;
}

}  // namespace wicklab
