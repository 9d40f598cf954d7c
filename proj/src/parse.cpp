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

#include "wicklab/parse.hpp"

#include <cctype>

namespace wicklab {

namespace {

struct Parser {
    const std::string& text;
    const std::vector<std::string>& vars;
    Backend backend;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    Parser(const std::string& t, const std::vector<std::string>& v, Backend b)
        : text(t), vars(v), backend(b) {}

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line, col); }

    char peek() const { return pos < text.size() ? text[pos] : '\0'; }

    char advance() {
        char c = text[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos != text.size()) fail("unexpected trailing input");
        return p;
    }

    Polynomial expr() {
        skip_ws();
        bool neg = false;
        while (true) {
            if (accept('-')) neg = !neg;
            else if (accept('+')) continue;
            else break;
        }
        Polynomial acc = term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (true) {
            skip_ws();
            if (accept('*')) acc *= factor();
            else break;
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial base = atom();
        skip_ws();
        if (accept('^')) {
            long e = exponent();
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    long exponent() {
        skip_ws();
        int eline = line, ecol = col;
        if (accept('(')) {
            // A parenthesized exponent must constant-fold to a nonnegative
            // integer; anything else (e.g. 1/2) is rejected.
            Polynomial p = expr();
            expect(')');
            if (!p.is_constant()) throw NonIntegerExponent("exponent is not constant");
            Coefficient c = p.constant_term();
            if (backend == Backend::Exact) {
                const mpq_class& re = c.exact_re();
                if (!c.is_real() || re.get_den() != 1 || sgn(re) < 0)
                    throw NonIntegerExponent("exponent is not a nonnegative integer");
                return re.get_num().get_si();
            }
            double v = c.to_double();
            if (v < 0 || v != static_cast<long>(v))
                throw NonIntegerExponent("exponent is not a nonnegative integer");
            return static_cast<long>(v);
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
            line = eline;
            col = ecol;
            fail("expected integer exponent");
        }
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(peek())))
            v = v * 10 + (advance() - '0');
        if (peek() == '.') throw NonIntegerExponent("exponent is not an integer");
        return v;
    }

    Polynomial atom() {
        skip_ws();
        if (accept('(')) {
            Polynomial p = expr();
            expect(')');
            return p;
        }
        if (accept('-')) return -atom();
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("expected a number, variable, or parenthesized expression");
    }

    Polynomial number() {
        std::string lit;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
            lit += advance();
        skip_ws();
        // Rational literal p/q: '/' binds only number-to-number.
        if (peek() == '/') {
            std::size_t save_pos = pos;
            int save_line = line, save_col = col;
            advance();
            skip_ws();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                std::string den;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(peek())))
                    den += advance();
                lit += "/" + den;
            } else {
                pos = save_pos;
                line = save_line;
                col = save_col;
            }
        }
        Coefficient c;
        try {
            c = Coefficient::parse(lit, backend);
        } catch (const Error&) {
            fail("malformed numeric literal '" + lit + "'");
        }
        int d = static_cast<int>(vars.size());
        return Polynomial::constant(d, c);
    }

    Polynomial identifier() {
        int iline = line, icol = col;
        std::string name;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            name += advance();
        int d = static_cast<int>(vars.size());
        if (name == "i") return Polynomial::constant(d, Coefficient::imaginary(backend));
        for (int k = 0; k < d; ++k)
            if (vars[k] == name) return Polynomial::variable(d, k, backend);
        throw UnknownVariable("unknown variable '" + name + "' at line " +
                              std::to_string(iline) + ", column " + std::to_string(icol));
    }
};

}  // namespace

Polynomial parse_expression(const std::string& text, const std::vector<std::string>& variables,
                            Backend backend) {
    for (const auto& v : variables)
        if (v == "i") throw Error("'i' is reserved for the imaginary unit");
    Parser p(text, variables, backend);
    return p.parse();
}

}  // namespace wicklab
