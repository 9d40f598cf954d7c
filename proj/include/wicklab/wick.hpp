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

#ifndef WICKLAB_WICK_HPP
#define WICKLAB_WICK_HPP

#include "wicklab/linalg.hpp"
#include "wicklab/polynomial.hpp"

namespace wicklab {

/// Nondegenerate symmetric bilinear form with cached inverse and determinant.
class QuadraticForm {
  public:
    QuadraticForm(Matrix a, Matrix a_inv, Coefficient det)
        : a_(std::move(a)), inv_(std::move(a_inv)), det_(std::move(det)) {}

    int dim() const { return a_.rows(); }
    const Matrix& matrix() const { return a_; }
    const Matrix& inverse() const { return inv_; }
    const Coefficient& determinant() const { return det_; }

    /// A(u, v).
    Coefficient pair(const std::vector<Coefficient>& u,
                     const std::vector<Coefficient>& v) const;
    /// The quadratic polynomial (1/2) A(x, x).
    Polynomial half_quadratic() const;

  private:
    Matrix a_, inv_;
    Coefficient det_;
};

/// Inverts a symmetric matrix, caching inverse and determinant. Throws
/// SingularMatrix when det A = 0 (a degenerate Hessian).
QuadraticForm invert_symmetric(const Matrix& a);

/// Symmetric contraction kernel for the Wick operator: either the inverse of
/// a quadratic form or a supplied generalized inverse (zero-mode case),
/// whose correctness is the caller's contract.
class Propagator {
  public:
    static Propagator from_form(const QuadraticForm& form);
    static Propagator supplied(Matrix g, std::string description = "");

    int dim() const { return g_.rows(); }
    const Matrix& matrix() const { return g_; }
    bool is_supplied() const { return supplied_; }
    const std::string& description() const { return desc_; }

  private:
    explicit Propagator(Matrix g) : g_(std::move(g)) {}
    Matrix g_;
    bool supplied_ = false;
    std::string desc_;
};

struct WickOptions {
    int memo_degree_cap = 24;
    int brute_degree_cap = 12;
};

/// The Wick operator: the pairing sum evaluated on each monomial via the
/// first-slot contraction recursion, memoized on exponent vectors; odd
/// monomials contribute zero. Linear in P.
Coefficient wick_value(const Polynomial& p, const Propagator& g,
                       const WickOptions& opts = {});

/// Testing oracle: enumerates all (2m-1)!! perfect matchings directly.
Coefficient wick_value_bruteforce(const Polynomial& p, const Propagator& g,
                                  const WickOptions& opts = {});

/// Checks the algebraic integration-by-parts identity
/// W_A(d_i P - A_ij x^j P) = 0 exactly.
bool check_wick_ibp(const Polynomial& p, const QuadraticForm& a, int i,
                    const WickOptions& opts = {});

}  // namespace wicklab

#endif
