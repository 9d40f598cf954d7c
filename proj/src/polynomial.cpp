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

#include "wicklab/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace wicklab {

Polynomial Polynomial::constant(int dim, const Coefficient& c) {
    Polynomial p(dim, c.backend());
    if (!c.is_zero()) p.terms_.emplace(Exponents(dim, 0), c);
    return p;
}

Polynomial Polynomial::variable(int dim, int i, Backend b) {
    if (i < 0 || i >= dim) throw DimensionMismatch("variable index out of range");
    Polynomial p(dim, b);
    Exponents e(dim, 0);
    e[i] = 1;
    p.terms_.emplace(std::move(e), Coefficient::one(b));
    return p;
}

Polynomial Polynomial::monomial(int dim, const Exponents& e, const Coefficient& c) {
    if (static_cast<int>(e.size()) != dim) throw DimensionMismatch("exponent vector length");
    Polynomial p(dim, c.backend());
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](int a) { return a == 0; }));
}

int Polynomial::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

Coefficient Polynomial::constant_term() const { return coeff(Exponents(dim_, 0)); }

Coefficient Polynomial::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coefficient::zero(backend_) : it->second;
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("polynomial dimensions differ");
    if (backend_ != o.backend_) throw BackendMismatch("polynomial backends differ");
}

Polynomial Polynomial::operator-() const {
    Polynomial r(dim_, backend_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(dim_, backend_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(dim_);
            for (int i = 0; i < dim_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Coefficient& c) const {
    if (c.backend() != backend_) throw BackendMismatch("scalar backend differs");
    Polynomial r(dim_, backend_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (dim_ != o.dim_ || backend_ != o.backend_ || terms_.size() != o.terms_.size())
        return false;
    return std::equal(terms_.begin(), terms_.end(), o.terms_.begin());
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0) throw Error("negative polynomial power");
    Polynomial r = constant(dim_, Coefficient::one(backend_));
    Polynomial base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        if (e >>= 1) base *= base;
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= dim_) throw DimensionMismatch("derivative index out of range");
    Polynomial r(dim_, backend_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        --d[var];
        Coefficient n = backend_ == Backend::Exact
                            ? Coefficient::exact(e[var])
                            : Coefficient::floating(static_cast<double>(e[var]));
        r.add_term(d, c * n);
    }
    return r;
}

Polynomial Polynomial::truncate_degree(int cap) const {
    if (cap < 0) return *this;
    Polynomial r(dim_, backend_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) <= cap) r.terms_.emplace(e, c);
    return r;
}

Polynomial Polynomial::recenter(const std::vector<Coefficient>& center) const {
    if (static_cast<int>(center.size()) != dim_)
        throw DimensionMismatch("center length differs from dimension");
    std::vector<Polynomial> images;
    images.reserve(dim_);
    for (int i = 0; i < dim_; ++i)
        images.push_back(constant(dim_, center[i]) + variable(dim_, i, backend_));
    return substitute(*this, images);
}

Polynomial Polynomial::homogeneous_part(int k) const {
    Polynomial r(dim_, backend_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == k) r.terms_.emplace(e, c);
    return r;
}

std::map<int, Polynomial> Polynomial::homogeneous_parts() const {
    std::map<int, Polynomial> parts;
    for (const auto& [e, c] : terms_) {
        int k = std::accumulate(e.begin(), e.end(), 0);
        auto [it, inserted] = parts.try_emplace(k, dim_, backend_);
        it->second.add_term(e, c);
    }
    return parts;
}

Coefficient Polynomial::evaluate(const std::vector<Coefficient>& point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw DimensionMismatch("evaluation point length differs from dimension");
    Coefficient acc = Coefficient::zero(backend_);
    for (const auto& [e, c] : terms_) {
        Coefficient t = c;
        for (int i = 0; i < dim_; ++i)
            if (e[i] != 0) t *= point[i].pow(e[i]);
        acc += t;
    }
    return acc;
}

std::complex<double> Polynomial::evaluate_c(std::span<const std::complex<double>> point) const {
    std::complex<double> acc = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

double Polynomial::evaluate_d(std::span<const double> point) const {
    std::complex<double> v =
        evaluate_c(std::vector<std::complex<double>>(point.begin(), point.end()));
    return v.real();
}

void Polynomial::add_term(const Exponents& e, const Coefficient& c) {
    if (static_cast<int>(e.size()) != dim_) throw DimensionMismatch("exponent vector length");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::to_float() const {
    if (backend_ == Backend::Float) return *this;
    Polynomial r(dim_, Backend::Float);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, Coefficient::floating(c.to_complex()));
    return r;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        if (c.is_real()) {
            out += c.str();
        } else {
            // parenthesized so the textual form reparses with the right
            // precedence: (re+im*i)*x1^a1...
            Coefficient re = c.backend() == Backend::Exact
                                 ? Coefficient::exact(c.exact_re())
                                 : Coefficient::floating(c.to_complex().real());
            Coefficient im = c.backend() == Backend::Exact
                                 ? Coefficient::exact(c.exact_im())
                                 : Coefficient::floating(c.to_complex().imag());
            std::string ims = im.str();
            bool neg = !ims.empty() && ims[0] == '-';
            out += "(" + re.str() + (neg ? "-" : "+") + (neg ? ims.substr(1) : ims) + "*i)";
        }
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0) continue;
            out += "*";
            out += (i < static_cast<int>(names.size())) ? names[i]
                                                        : "x" + std::to_string(i + 1);
            if (e[i] != 1) out += "^" + std::to_string(e[i]);
        }
    }
    return out;
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
    if (static_cast<int>(images.size()) != p.dim())
        throw DimensionMismatch("substitute: need one image per variable");
    int out_dim = images.empty() ? 0 : images[0].dim();
    Backend b = p.backend();
    for (const auto& im : images) {
        if (im.dim() != out_dim) throw DimensionMismatch("substitute: image dimensions differ");
        if (im.backend() != b) throw BackendMismatch("substitute: image backend differs");
    }
    // Cache image powers; exponents at desk scale are small.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](int var, int e) -> const Polynomial& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(Polynomial::constant(out_dim, Coefficient::one(b)));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[var]);
        return cache[e];
    };
    Polynomial r(out_dim, b);
    for (const auto& [e, c] : p.terms()) {
        Polynomial t = Polynomial::constant(out_dim, c);
        for (int i = 0; i < p.dim(); ++i)
            if (e[i] != 0) t *= power(i, e[i]);
        r += t;
    }
    return r;
}

Polynomial partial_derivative(const Polynomial& p, int var) { return p.derivative(var); }

Polynomial polynomial_matrix_det(const std::vector<std::vector<Polynomial>>& m) {
    if (m.empty()) throw DimensionMismatch("empty matrix");
    const int n = static_cast<int>(m.size());
    const int d = m[0][0].dim();
    const Backend b = m[0][0].backend();
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j) cols[j] = j;
    std::function<Polynomial(int, std::vector<int>&)> det = [&](int row, std::vector<int>& cs) {
        if (cs.empty()) return Polynomial::constant(d, Coefficient::one(b));
        Polynomial acc(d, b);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (m[row][cs[k]].is_zero()) continue;
            std::vector<int> rest;
            rest.reserve(cs.size() - 1);
            for (std::size_t t = 0; t < cs.size(); ++t)
                if (t != k) rest.push_back(cs[t]);
            Polynomial sub = m[row][cs[k]] * det(row + 1, rest);
            if (k % 2 == 0) acc += sub;
            else acc -= sub;
        }
        return acc;
    };
    return det(0, cols);
}

CompiledPoly::CompiledPoly(const Polynomial& p) : dim(p.dim()) {
    terms.reserve(p.terms().size());
    for (const auto& [e, c] : p.terms()) terms.push_back({c.to_complex(), e});
}

std::complex<double> CompiledPoly::eval(std::span<const double> x) const {
    std::complex<double> acc = 0.0;
    for (const auto& t : terms) {
        double m = 1.0;
        for (int i = 0; i < dim; ++i) {
            double xi = x[i];
            for (int k = 0; k < t.e[i]; ++k) m *= xi;
        }
        acc += t.c * m;
    }
    return acc;
}

}  // namespace wicklab
