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

#include "wicklab/coefficient.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wicklab {

Coefficient Coefficient::exact(long num, long den) {
    if (den == 0) throw Error("rational with zero denominator");
    Coefficient c;
    c.backend_ = Backend::Exact;
    c.re_ = mpq_class(num, den);
    c.re_.canonicalize();
    return c;
}

Coefficient Coefficient::exact(const mpq_class& re, const mpq_class& im) {
    Coefficient c;
    c.backend_ = Backend::Exact;
    c.re_ = re;
    c.im_ = im;
    return c;
}

Coefficient Coefficient::floating(std::complex<double> v) {
    Coefficient c;
    c.backend_ = Backend::Float;
    c.f_ = v;
    return c;
}

Coefficient Coefficient::zero(Backend b) {
    return b == Backend::Exact ? exact(0) : floating(0.0);
}

Coefficient Coefficient::one(Backend b) {
    return b == Backend::Exact ? exact(1) : floating(1.0);
}

Coefficient Coefficient::imaginary(Backend b) {
    return b == Backend::Exact ? exact(mpq_class(0), mpq_class(1))
                               : floating(std::complex<double>(0.0, 1.0));
}

bool Coefficient::is_zero() const {
    if (backend_ == Backend::Exact) return sgn(re_) == 0 && sgn(im_) == 0;
    return f_ == std::complex<double>(0.0, 0.0);
}

bool Coefficient::is_one() const {
    if (backend_ == Backend::Exact) return re_ == 1 && sgn(im_) == 0;
    return f_ == std::complex<double>(1.0, 0.0);
}

bool Coefficient::is_real() const {
    if (backend_ == Backend::Exact) return sgn(im_) == 0;
    return f_.imag() == 0.0;
}

Coefficient Coefficient::operator-() const {
    if (backend_ == Backend::Exact) return exact(-re_, -im_);
    return floating(-f_);
}

Coefficient Coefficient::operator+(const Coefficient& o) const {
    check_same(o);
    if (backend_ == Backend::Exact) return exact(re_ + o.re_, im_ + o.im_);
    return floating(f_ + o.f_);
}

Coefficient Coefficient::operator-(const Coefficient& o) const {
    check_same(o);
    if (backend_ == Backend::Exact) return exact(re_ - o.re_, im_ - o.im_);
    return floating(f_ - o.f_);
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
    check_same(o);
    if (backend_ == Backend::Exact)
        return exact(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    return floating(f_ * o.f_);
}

Coefficient Coefficient::operator/(const Coefficient& o) const {
    check_same(o);
    if (backend_ == Backend::Exact) {
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        if (sgn(n) == 0) throw Error("division by zero coefficient");
        return exact((re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n);
    }
    return floating(f_ / o.f_);
}

bool Coefficient::operator==(const Coefficient& o) const {
    if (backend_ != o.backend_) return false;
    if (backend_ == Backend::Exact) return re_ == o.re_ && im_ == o.im_;
    return f_ == o.f_;
}

Coefficient Coefficient::inverse() const { return one(backend_) / *this; }

Coefficient Coefficient::conj() const {
    if (backend_ == Backend::Exact) return exact(re_, -im_);
    return floating(std::conj(f_));
}

Coefficient Coefficient::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Coefficient r = one(backend_);
    Coefficient base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::optional<Coefficient> Coefficient::sqrt_exact() const {
    if (backend_ == Backend::Float) return floating(std::sqrt(f_));
    if (sgn(im_) != 0 || sgn(re_) < 0) return std::nullopt;
    const mpz_class& num = re_.get_num();
    const mpz_class& den = re_.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return exact(mpq_class(rn, rd));
}

std::complex<double> Coefficient::to_complex() const {
    if (backend_ == Backend::Exact) return {re_.get_d(), im_.get_d()};
    return f_;
}

double Coefficient::to_double() const {
    if (!is_real()) throw Error("coefficient is not real");
    return backend_ == Backend::Exact ? re_.get_d() : f_.real();
}

const mpq_class& Coefficient::exact_re() const {
    if (backend_ != Backend::Exact) throw BackendMismatch("exact accessor on float value");
    return re_;
}

const mpq_class& Coefficient::exact_im() const {
    if (backend_ != Backend::Exact) throw BackendMismatch("exact accessor on float value");
    return im_;
}

namespace {

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string double_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string Coefficient::str() const {
    if (backend_ == Backend::Exact) {
        if (sgn(im_) == 0) return rational_str(re_);
        std::string s = rational_str(re_);
        s += (sgn(im_) < 0) ? "-" : "+";
        s += rational_str(abs(im_));
        s += " i";
        return s;
    }
    if (f_.imag() == 0.0) return double_str(f_.real());
    std::string s = double_str(f_.real());
    s += (f_.imag() < 0.0) ? "-" : "+";
    s += double_str(std::abs(f_.imag()));
    s += " i";
    return s;
}

Coefficient Coefficient::parse(const std::string& text, Backend b) {
    // Accepts [sign] part [sign part "i"], with part a rational p/q or decimal.
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_number = [&](std::string& out) {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                text[pos] == '/' || text[pos] == 'e' || text[pos] == 'E' ||
                ((text[pos] == '+' || text[pos] == '-') && pos > start &&
                 (text[pos - 1] == 'e' || text[pos - 1] == 'E'))))
            ++pos;
        out = text.substr(start, pos - start);
        return !out.empty() && out != "+" && out != "-";
    };
    auto to_rational = [](std::string s) -> mpq_class {
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            mpq_class q(s, 10);
            q.canonicalize();
            return q;
        }
        auto dot = s.find('.');
        auto epos = s.find_first_of("eE");
        if (dot == std::string::npos && epos == std::string::npos) {
            mpq_class q(s, 10);
            q.canonicalize();
            return q;
        }
        // decimal (with optional exponent) -> exact rational
        std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
        long ex = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
        std::string digits;
        long frac = 0;
        bool neg = false;
        for (std::size_t i = 0; i < mant.size(); ++i) {
            char c = mant[i];
            if (c == '-') neg = true;
            else if (c == '+') continue;
            else if (c == '.') frac = static_cast<long>(mant.size() - i - 1);
            else digits += c;
        }
        if (digits.empty()) digits = "0";
        mpz_class num(digits, 10);
        if (neg) num = -num;
        mpq_class q(num);
        long shift = ex - frac;
        mpz_class ten10;
        mpz_ui_pow_ui(ten10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
        if (shift >= 0) q *= mpq_class(ten10);
        else q /= mpq_class(ten10);
        q.canonicalize();
        return q;
    };

    std::string first;
    if (!read_number(first)) throw Error("cannot parse coefficient: " + text);
    skip_ws();
    std::string second;
    bool has_imag = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (!read_number(second)) throw Error("cannot parse coefficient: " + text);
        has_imag = true;
    }
    skip_ws();
    bool trailing_i = pos < text.size() && text[pos] == 'i';
    if (trailing_i) ++pos;
    skip_ws();
    if (pos != text.size()) throw Error("cannot parse coefficient: " + text);

    std::string re_part = "0", im_part = "0";
    if (has_imag) {
        if (!trailing_i) throw Error("cannot parse coefficient: " + text);
        re_part = first;
        im_part = second;
    } else if (trailing_i) {
        im_part = first;
    } else {
        re_part = first;
    }
    if (b == Backend::Exact) return exact(to_rational(re_part), to_rational(im_part));
    // rational literals go through the exact reader; decimals use the
    // correctly-rounded standard conversion
    auto to_double = [&](const std::string& s) {
        if (s.find('/') != std::string::npos) return to_rational(s).get_d();
        return std::stod(s);
    };
    return floating(to_double(re_part), to_double(im_part));
}

}  // namespace wicklab
