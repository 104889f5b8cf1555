// Copyright 2026-present the uqsd project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UQSD_COMPLEX_MATRIX_HPP
#define UQSD_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace uqsd {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense row-major complex matrix. Zero rows or columns are legal (a
/// rows x 0 matrix still remembers its row count), which keeps empty
/// bases and empty ensembles out of special-case code.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, cplx(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    cplx* row(std::size_t i) { return entries_.data() + i * cols_; }
    const cplx* row(std::size_t i) const { return entries_.data() + i * cols_; }

    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    // max_ij |m(i,j) - conj(m(j,i))|
    double hermiticity_residual() const;
    ComplexMatrix hermitized() const;  // (m + m†)/2
    bool all_finite() const;

    ComplexVector column(std::size_t j) const;
    void set_column(std::size_t j, const ComplexVector& v);
    // Columns [first, first+count) as a new matrix.
    ComplexMatrix columns(std::size_t first, std::size_t count) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx scale) { return a *= scale; }
    friend ComplexMatrix operator*(cplx scale, ComplexMatrix a) { return a *= scale; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

// a * b through the caxpy kernel (row-major friendly).
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return multiply(a, b);
}

// a * v for a column vector v.
ComplexVector multiply(const ComplexMatrix& a, const ComplexVector& v);

// Matrix whose columns are the given vectors (all of dimension dim).
ComplexMatrix matrix_from_columns(std::size_t dim, const std::vector<ComplexVector>& cols);

double vector_norm(const ComplexVector& v);

}  // namespace uqsd

#endif  // UQSD_COMPLEX_MATRIX_HPP
