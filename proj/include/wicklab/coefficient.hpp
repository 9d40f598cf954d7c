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

#ifndef WICKLAB_COEFFICIENT_HPP
#define WICKLAB_COEFFICIENT_HPP

#include <complex>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "wicklab/common.hpp"

namespace wicklab {

/// A scalar from one of the two coefficient fields: exact complex rationals
/// or double-precision complex numbers. Arithmetic between different
/// backends throws BackendMismatch.
class Coefficient {
  public:
    Coefficient() : backend_(Backend::Exact) {}

    static Coefficient exact(long num, long den = 1);
    static Coefficient exact(const mpq_class& re, const mpq_class& im = mpq_class(0));
    static Coefficient floating(std::complex<double> v);
    static Coefficient floating(double re, double im = 0.0) {
        return floating(std::complex<double>(re, im));
    }
    static Coefficient zero(Backend b);
    static Coefficient one(Backend b);
    /// The imaginary unit.
    static Coefficient imaginary(Backend b);

    Backend backend() const { return backend_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_real() const;

    Coefficient operator-() const;
    Coefficient operator+(const Coefficient& o) const;
    Coefficient operator-(const Coefficient& o) const;
    Coefficient operator*(const Coefficient& o) const;
    Coefficient operator/(const Coefficient& o) const;
    Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
    Coefficient& operator-=(const Coefficient& o) { return *this = *this - o; }
    Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
    Coefficient& operator/=(const Coefficient& o) { return *this = *this / o; }
    bool operator==(const Coefficient& o) const;
    bool operator!=(const Coefficient& o) const { return !(*this == o); }

    Coefficient inverse() const;
    Coefficient conj() const;
    Coefficient pow(long e) const;

    /// Exact square root when the value is a nonnegative rational whose
    /// numerator and denominator are perfect squares; nullopt otherwise.
    /// Float backend: principal branch, always available.
    std::optional<Coefficient> sqrt_exact() const;

    std::complex<double> to_complex() const;
    double to_double() const;  // requires a real value

    const mpq_class& exact_re() const;
    const mpq_class& exact_im() const;

    /// Canonical text form: "p/q", "p/q+r/s i" or "p/q-r/s i" (exact);
    /// shortest-round-trip decimals for the float backend.
    std::string str() const;
    /// Parses the canonical text form produced by str().
    static Coefficient parse(const std::string& text, Backend b);

  private:
    Backend backend_;
    mpq_class re_, im_;
    std::complex<double> f_{0.0, 0.0};

    void check_same(const Coefficient& o) const {
        if (backend_ != o.backend_) throw BackendMismatch("mixed exact/float arithmetic");
    }
};

}  // namespace wicklab

#endif
