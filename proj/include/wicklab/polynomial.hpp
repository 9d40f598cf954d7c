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

#ifndef WICKLAB_POLYNOMIAL_HPP
#define WICKLAB_POLYNOMIAL_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "wicklab/coefficient.hpp"

namespace wicklab {

/// Exponent vector of a monomial; always has length equal to the ambient
/// dimension. The std::map ordering (lexicographic) is the canonical term
/// order used for serialization and float summation.
using Exponents = std::vector<int>;

/// Multivariate polynomial over a fixed coefficient backend. Immutable in
/// spirit: all operations return new values. No zero coefficients are stored.
class Polynomial {
  public:
    Polynomial(int dim, Backend b) : dim_(dim), backend_(b) {}

    static Polynomial zero(int dim, Backend b) { return Polynomial(dim, b); }
    static Polynomial constant(int dim, const Coefficient& c);
    static Polynomial variable(int dim, int i, Backend b);
    static Polynomial monomial(int dim, const Exponents& e, const Coefficient& c);

    int dim() const { return dim_; }
    Backend backend() const { return backend_; }
    const std::map<Exponents, Coefficient>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Total degree; -1 for the zero polynomial.
    int total_degree() const;
    Coefficient constant_term() const;
    Coefficient coeff(const Exponents& e) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Coefficient& c) const;
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(int e) const;
    Polynomial derivative(int var) const;
    /// Drops every term of total degree > cap (cap < 0 keeps everything).
    Polynomial truncate_degree(int cap) const;

    /// p(center + x): recentering substitution without a grading.
    Polynomial recenter(const std::vector<Coefficient>& center) const;
    /// Homogeneous part of total degree k.
    Polynomial homogeneous_part(int k) const;
    std::map<int, Polynomial> homogeneous_parts() const;

    Coefficient evaluate(const std::vector<Coefficient>& point) const;
    std::complex<double> evaluate_c(std::span<const std::complex<double>> point) const;
    double evaluate_d(std::span<const double> point) const;

    void add_term(const Exponents& e, const Coefficient& c);

    /// Copy with every coefficient converted to the float backend.
    Polynomial to_float() const;

    std::string str(const std::vector<std::string>& names = {}) const;

  private:
    int dim_;
    Backend backend_;
    std::map<Exponents, Coefficient> terms_;

    void check_compatible(const Polynomial& o) const;
};

/// Exact composition p(images); the images must share a common dimension,
/// which becomes the dimension of the result.
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images);

/// Formal partial derivative with respect to variable `var`.
Polynomial partial_derivative(const Polynomial& p, int var);

/// Determinant of a small square matrix of polynomials (cofactor expansion).
Polynomial polynomial_matrix_det(const std::vector<std::vector<Polynomial>>& m);

/// Flattened float view of a polynomial for fast repeated numeric evaluation.
struct CompiledPoly {
    struct Term {
        std::complex<double> c;
        Exponents e;
    };
    int dim = 0;
    std::vector<Term> terms;

    explicit CompiledPoly(const Polynomial& p);
    std::complex<double> eval(std::span<const double> x) const;
};

}  // namespace wicklab

#endif
