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

#ifndef WICKLAB_TEST_UTIL_HPP
#define WICKLAB_TEST_UTIL_HPP

#include <cstdlib>
#include <random>

#include "wicklab/linalg.hpp"
#include "wicklab/parse.hpp"
#include "wicklab/polynomial.hpp"

namespace wicklab::testutil {

inline std::uint64_t seed_from_env() {
    if (const char* env = std::getenv("WICKLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed = seed_from_env()) : gen(seed) {}

    int uniform(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(gen);
    }

    Coefficient rational(int max_num = 9, int max_den = 6) {
        long num = uniform(-max_num, max_num);
        long den = uniform(1, max_den);
        return Coefficient::exact(num, den);
    }

    Coefficient nonzero_rational(int max_num = 9, int max_den = 6) {
        Coefficient c = rational(max_num, max_den);
        while (c.is_zero()) c = rational(max_num, max_den);
        return c;
    }

    Polynomial polynomial(int dim, int max_degree, int terms) {
        Polynomial p(dim, Backend::Exact);
        for (int t = 0; t < terms; ++t) {
            Exponents e(dim, 0);
            int budget = uniform(0, max_degree);
            for (int i = 0; i < dim && budget > 0; ++i) {
                e[i] = uniform(0, budget);
                budget -= e[i];
            }
            p.add_term(e, rational());
        }
        return p;
    }

    Matrix symmetric_nonsingular(int dim, int max_num = 5) {
        while (true) {
            Matrix a(dim, dim, Backend::Exact);
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) {
                    Coefficient c = rational(max_num, 3);
                    a.at(i, j) = c;
                    a.at(j, i) = c;
                }
            if (!a.determinant().is_zero()) return a;
        }
    }

    Matrix invertible(int dim, int max_num = 4) {
        while (true) {
            Matrix a(dim, dim, Backend::Exact);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a.at(i, j) = rational(max_num, 2);
            if (!a.determinant().is_zero()) return a;
        }
    }
};

inline Polynomial parse1(const std::string& text) {
    return parse_expression(text, {"x"});
}

inline Polynomial parse2(const std::string& text) {
    return parse_expression(text, {"x", "y"});
}

}  // namespace wicklab::testutil

#endif
