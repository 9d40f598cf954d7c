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

#include "wicklab/linalg.hpp"

#include <cmath>

namespace wicklab {

Matrix::Matrix(int rows, int cols, Backend b)
    : rows_(rows), cols_(cols), backend_(b),
      data_(static_cast<std::size_t>(rows) * cols, Coefficient::zero(b)) {}

Matrix Matrix::identity(int n, Backend b) {
    Matrix m(n, n, b);
    for (int i = 0; i < n; ++i) m.at(i, i) = Coefficient::one(b);
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Matrix m(r, c, Backend::Exact);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long v : row) m.at(i, j++) = Coefficient::exact(v);
        ++i;
    }
    return m;
}

Matrix Matrix::from_rows_f(std::initializer_list<std::initializer_list<double>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Matrix m(r, c, Backend::Float);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (double v : row) m.at(i, j++) = Coefficient::floating(v);
        ++i;
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add shape");
    Matrix m(rows_, cols_, backend_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sub shape");
    Matrix m(rows_, cols_, backend_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix mul shape");
    Matrix m(rows_, o.cols_, backend_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Coefficient& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += a * o.at(k, j);
        }
    return m;
}

Matrix Matrix::scale(const Coefficient& c) const {
    Matrix m(rows_, cols_, backend_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * c;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_, backend_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

Coefficient Matrix::trace() const {
    Coefficient t = Coefficient::zero(backend_);
    for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
    return t;
}

Coefficient Matrix::eliminate(Matrix& a, Matrix& b) {
    int n = a.rows_;
    Backend be = a.backend_;
    Coefficient det = Coefficient::one(be);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        if (be == Backend::Exact) {
            for (int r = col; r < n; ++r)
                if (!a.at(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
        } else {
            double best = 0.0;
            for (int r = col; r < n; ++r) {
                double mag = std::abs(a.at(r, col).to_complex());
                if (mag > best) {
                    best = mag;
                    pivot = r;
                }
            }
            if (best == 0.0) pivot = -1;
        }
        if (pivot < 0) throw SingularMatrix();
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            for (int j = 0; j < b.cols_; ++j) std::swap(b.at(pivot, j), b.at(col, j));
            det = -det;
        }
        Coefficient p = a.at(col, col);
        det *= p;
        Coefficient pinv = p.inverse();
        for (int j = 0; j < n; ++j) a.at(col, j) *= pinv;
        for (int j = 0; j < b.cols_; ++j) b.at(col, j) *= pinv;
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Coefficient factor = a.at(r, col);
            if (factor.is_zero()) continue;
            for (int j = 0; j < n; ++j) a.at(r, j) -= factor * a.at(col, j);
            for (int j = 0; j < b.cols_; ++j) b.at(r, j) -= factor * b.at(col, j);
        }
    }
    return det;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    Matrix a = *this;
    Matrix b = identity(rows_, backend_);
    eliminate(a, b);
    return b;
}

Coefficient Matrix::determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of non-square matrix");
    Matrix a = *this;
    Matrix b(rows_, 0, backend_);
    try {
        return eliminate(a, b);
    } catch (const SingularMatrix&) {
        return Coefficient::zero(backend_);
    }
}

Matrix Matrix::solve(const Matrix& rhs) const {
    if (rows_ != cols_ || rhs.rows_ != rows_) throw DimensionMismatch("solve shape");
    Matrix a = *this;
    Matrix b = rhs;
    eliminate(a, b);
    return b;
}

std::vector<Coefficient> Matrix::mul_vec(const std::vector<Coefficient>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("matrix-vector shape");
    std::vector<Coefficient> out(rows_, Coefficient::zero(backend_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
    return out;
}

}  // namespace wicklab
