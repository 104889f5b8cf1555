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

#include "uqsd/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "uqsd/kernels.hpp"

namespace uqsd {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = cplx(1.0, 0.0);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        out.entries_[k] = std::conj(entries_[k]);
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) {
        throw std::invalid_argument("trace: matrix not square");
    }
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& e : entries_) {
        s += std::norm(e);
    }
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

double ComplexMatrix::hermiticity_residual() const {
    if (!is_square()) {
        throw std::invalid_argument("hermiticity_residual: matrix not square");
    }
    double r = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::hermitized() const {
    if (!is_square()) {
        throw std::invalid_argument("hermitized: matrix not square");
    }
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
        }
    }
    return out;
}

bool ComplexMatrix::all_finite() const {
    for (const cplx& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            return false;
        }
    }
    return true;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
    ComplexVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        v[i] = (*this)(i, j);
    }
    return v;
}

void ComplexMatrix::set_column(std::size_t j, const ComplexVector& v) {
    if (v.size() != rows_) {
        throw std::invalid_argument("set_column: length mismatch");
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, j) = v[i];
    }
}

ComplexMatrix ComplexMatrix::columns(std::size_t first, std::size_t count) const {
    if (first + count > cols_) {
        throw std::invalid_argument("columns: range out of bounds");
    }
    ComplexMatrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            out(i, j) = (*this)(i, first + j);
        }
    }
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix add: shape mismatch");
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix subtract: shape mismatch");
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
    for (cplx& e : entries_) {
        e *= scale;
    }
    return *this;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix multiply: inner dimension mismatch");
    }
    ComplexMatrix c(a.rows(), b.cols());
    if (b.cols() == 0 || a.rows() == 0) {
        return c;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            kernels::caxpy(b.cols(), a(i, k), b.row(k), c.row(i));
        }
    }
    return c;
}

ComplexVector multiply(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols() != v.size()) {
        throw std::invalid_argument("matrix-vector multiply: dimension mismatch");
    }
    ComplexVector out(a.rows(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s(0.0, 0.0);
        const cplx* r = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            s += r[k] * v[k];
        }
        out[i] = s;
    }
    return out;
}

ComplexMatrix matrix_from_columns(std::size_t dim, const std::vector<ComplexVector>& cols) {
    ComplexMatrix m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != dim) {
            throw std::invalid_argument("matrix_from_columns: vector length mismatch");
        }
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, j) = cols[j][i];
        }
    }
    return m;
}

double vector_norm(const ComplexVector& v) {
    return std::sqrt(std::max(0.0, kernels::cdotc(v.size(), v.data(), v.data()).real()));
}

}  // namespace uqsd
