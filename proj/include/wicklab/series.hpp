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

#ifndef WICKLAB_SERIES_HPP
#define WICKLAB_SERIES_HPP

#include "wicklab/polynomial.hpp"

namespace wicklab {

/// Formal series graded by integer powers of hbar^{1/2} with polynomial
/// coefficients. Grades may be negative (Laurent factors). `order()` is the
/// highest grade the series is valid through; grades above it are absent and
/// every operation records the order through which its result is trustworthy
/// (kUnbounded marks a series exact at all orders). Truncation is never
/// silent: multiplicative operations take an explicit target order.
class HbarGradedSeries {
  public:
    HbarGradedSeries(int dim, Backend b, int order = kUnbounded)
        : dim_(dim), backend_(b), order_(order) {}

    static HbarGradedSeries zero(int dim, Backend b, int order = kUnbounded) {
        return HbarGradedSeries(dim, b, order);
    }
    /// A polynomial placed at a single grade.
    static HbarGradedSeries from_polynomial(const Polynomial& p, int grade = 0,
                                            int order = kUnbounded);
    /// A scalar placed at a single grade.
    static HbarGradedSeries from_scalar(int dim, const Coefficient& c, int grade = 0,
                                        int order = kUnbounded);

    int dim() const { return dim_; }
    Backend backend() const { return backend_; }
    int order() const { return order_; }
    const std::map<int, Polynomial>& grades() const { return grades_; }
    bool is_zero() const { return grades_.empty(); }
    /// Lowest grade present; `order()+1` when the series is zero.
    int min_grade() const;
    Polynomial at(int grade) const;

    void set(int grade, const Polynomial& p);
    void add_at(int grade, const Polynomial& p);

    HbarGradedSeries operator+(const HbarGradedSeries& o) const;
    HbarGradedSeries operator-(const HbarGradedSeries& o) const;
    HbarGradedSeries scale(const Coefficient& c) const;
    HbarGradedSeries mul_poly(const Polynomial& p) const;
    /// Product truncated at grade N (and at whatever order the inputs
    /// support, whichever is lower).
    HbarGradedSeries mul(const HbarGradedSeries& o, int N) const;
    /// Multiplies by hbar^{k/2}.
    HbarGradedSeries shift_grade(int k) const;
    HbarGradedSeries truncated(int N) const;
    HbarGradedSeries derivative(int var) const;

    /// Multiplicative inverse through grade N. Requires the lowest grade to
    /// be 0 with an invertible constant polynomial there.
    HbarGradedSeries inverse(int N) const;

    /// Substitute hbar = 1: the plain polynomial sum of all grades.
    Polynomial at_hbar_one() const;
    /// Numeric evaluation at a point with hbar complex; uses the principal
    /// branch of hbar^{1/2}.
    std::complex<double> evaluate(std::span<const std::complex<double>> point,
                                  std::complex<double> hbar) const;

    bool operator==(const HbarGradedSeries& o) const;

    HbarGradedSeries to_float() const;

    std::string str(const std::vector<std::string>& names = {}) const;

  private:
    int dim_;
    Backend backend_;
    int order_;
    std::map<int, Polynomial> grades_;

    void check_compatible(const HbarGradedSeries& o) const;
};

/// Recenters p about `center` under x -> center + hbar^{1/2} u and groups by
/// grade: the grade-k entry is the degree-k homogeneous part of the
/// recentered polynomial. With rescale = false the whole recentered
/// polynomial sits at grade 0.
HbarGradedSeries regrade(const Polynomial& p, const std::vector<Coefficient>& center,
                         bool rescale = true);

/// Truncated exponential sum_m s^m / m! through grade N. Every grade of s
/// must be >= 1.
HbarGradedSeries graded_exp(const HbarGradedSeries& s, int N);

}  // namespace wicklab

#endif
