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

#ifndef WICKLAB_LINALG_HPP
#define WICKLAB_LINALG_HPP

#include <initializer_list>

#include "wicklab/coefficient.hpp"

namespace wicklab {

/// Dense matrix over Coefficient. Desk-scale sizes only; exact backends get
/// exact Gauss-Jordan elimination, the float backend pivots by magnitude.
class Matrix {
  public:
    Matrix(int rows, int cols, Backend b);
    static Matrix identity(int n, Backend b);
    static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static Matrix from_rows_f(std::initializer_list<std::initializer_list<double>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Backend backend() const { return backend_; }

    Coefficient& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Coefficient& at(int r, int c) const {
        return data_[static_cast<std::size_t>(r) * cols_ + c];
    }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix scale(const Coefficient& c) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const;

    bool is_symmetric() const;
    Coefficient trace() const;

    /// Inverse and determinant by Gauss-Jordan elimination; throws
    /// SingularMatrix when the determinant vanishes (float backend: when no
    /// usable pivot remains).
    Matrix inverse() const;
    Coefficient determinant() const;
    /// Solves A x = b for each column of b.
    Matrix solve(const Matrix& rhs) const;

    std::vector<Coefficient> mul_vec(const std::vector<Coefficient>& v) const;

  private:
    int rows_, cols_;
    Backend backend_;
    std::vector<Coefficient> data_;

    // Gauss-Jordan on [A | B]; returns det(A).
    static Coefficient eliminate(Matrix& a, Matrix& b);
};

}  // namespace wicklab

#endif
