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

#include "uqsd/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uqsd/kernels.hpp"

namespace uqsd {

namespace {

constexpr double kHermTol = 1e-9;

// One two-sided rotation zeroing A(p,q). A is updated in place through
// its rows; the strided column halves are restored from Hermitian
// symmetry afterwards. vt accumulates the transpose of the eigenvector
// matrix so its updates are row operations too.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& vt, std::size_t p, std::size_t q) {
    const std::size_t n = a.rows();
    const cplx beta = a(p, q);
    const double absb = std::abs(beta);
    if (absb == 0.0) {
        return;
    }
    const double alpha = a(p, p).real();
    const double gamma = a(q, q).real();
    const double tau = (gamma - alpha) / (2.0 * absb);
    const double sign = tau >= 0.0 ? 1.0 : -1.0;
    const double t = sign / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const cplx w = beta / absb;  // phase of the pivot

    // rows p,q of U† A:  row_p' = c*row_p - s*w*row_q,  row_q' = s*row_p + c*w*row_q
    kernels::cpair_update(n, cplx(c, 0.0), -s * w, cplx(s, 0.0), c * w, a.row(p), a.row(q));

    // Columns p,q of (U† A) U follow from hermiticity; the 2x2 pivot
    // block is known in closed form.
    for (std::size_t j = 0; j < n; ++j) {
        if (j == p || j == q) continue;
        a(j, p) = std::conj(a(p, j));
        a(j, q) = std::conj(a(q, j));
    }
    a(p, p) = cplx(alpha - t * absb, 0.0);
    a(q, q) = cplx(gamma + t * absb, 0.0);
    a(p, q) = cplx(0.0, 0.0);
    a(q, p) = cplx(0.0, 0.0);

    // V <- V U, as rows of vt = V^T:  vt_p' = c*vt_p - s*conj(w)*vt_q, ...
    const cplx wc = std::conj(w);
    kernels::cpair_update(n, cplx(c, 0.0), -s * wc, cplx(s, 0.0), c * wc, vt.row(p),
                          vt.row(q));
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            s += 2.0 * std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eig(const ComplexMatrix& m, bool hermitize) {
    if (!m.is_square()) {
        throw std::invalid_argument("hermitian_eig: matrix not square");
    }
    if (!hermitize && m.hermiticity_residual() > kHermTol) {
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian within 1e-9");
    }
    const std::size_t n = m.rows();
    HermitianEigen out;
    out.vectors = ComplexMatrix::identity(n);
    out.values.assign(n, 0.0);
    if (n == 0) {
        return out;
    }

    ComplexMatrix a = m.hermitized();
    ComplexMatrix vt = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());

    const std::size_t max_sweeps = 100;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        if (offdiag_norm(a) <= 1e-14 * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                jacobi_rotate(a, vt, p, q);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });

    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = vt(order[k], i);
        }
    }
    return out;
}

std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& vectors,
                                        double tol) {
    std::vector<ComplexVector> basis;
    if (vectors.empty()) {
        return basis;
    }
    const std::size_t dim = vectors.front().size();
    if (dim == 0) {
        throw std::invalid_argument("gram_schmidt: empty dimension");
    }
    for (const ComplexVector& v : vectors) {
        if (v.size() != dim) {
            throw std::invalid_argument("gram_schmidt: mixed vector dimensions");
        }
        ComplexVector w = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const ComplexVector& u : basis) {
                const cplx coeff = kernels::cdotc(dim, u.data(), w.data());
                kernels::caxpy(dim, -coeff, u.data(), w.data());
            }
        }
        const double r = vector_norm(w);
        if (r <= tol) {
            continue;
        }
        for (cplx& e : w) {
            e /= r;
        }
        basis.push_back(std::move(w));
    }
    return basis;
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& orthonormal_cols) {
    const std::size_t n = orthonormal_cols.rows();
    const std::size_t k = orthonormal_cols.cols();
    if (n == 0) {
        throw std::invalid_argument("complete_to_unitary: empty dimension");
    }
    if (k > n) {
        throw std::invalid_argument("complete_to_unitary: more columns than rows");
    }
    const ComplexMatrix gram = orthonormal_cols.adjoint() * orthonormal_cols;
    double residual = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const cplx expect = i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            residual = std::max(residual, std::abs(gram(i, j) - expect));
        }
    }
    if (residual > 1e-9) {
        throw std::invalid_argument("complete_to_unitary: columns not orthonormal");
    }

    std::vector<ComplexVector> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < k; ++j) {
        basis.push_back(orthonormal_cols.column(j));
    }
    for (std::size_t j = 0; j < n && basis.size() < n; ++j) {
        ComplexVector w(n, cplx(0.0, 0.0));
        w[j] = cplx(1.0, 0.0);
        for (int pass = 0; pass < 2; ++pass) {
            for (const ComplexVector& u : basis) {
                const cplx coeff = kernels::cdotc(n, u.data(), w.data());
                kernels::caxpy(n, -coeff, u.data(), w.data());
            }
        }
        const double r = vector_norm(w);
        if (r <= 1e-6) {
            continue;
        }
        for (cplx& e : w) {
            e /= r;
        }
        basis.push_back(std::move(w));
    }
    if (basis.size() != n) {
        throw std::runtime_error("complete_to_unitary: completion failed");
    }

    ComplexMatrix u(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        u.set_column(j, basis[j]);
    }
    return u;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw std::invalid_argument("matrix_sqrt_psd: matrix not square");
    }
    const double norm = std::max(m.frobenius_norm(), 1e-30);
    if (m.hermiticity_residual() > 1e-6 * std::max(1.0, norm)) {
        throw std::invalid_argument("matrix_sqrt_psd: matrix not Hermitian");
    }
    const HermitianEigen eig = hermitian_eig(m, true);
    const std::size_t n = m.rows();
    for (double v : eig.values) {
        if (v < -1e-6 * norm) {
            throw std::invalid_argument("matrix_sqrt_psd: eigenvalue significantly negative");
        }
    }
    ComplexMatrix scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double root = std::sqrt(std::max(0.0, eig.values[j]));
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) = eig.vectors(i, j) * root;
        }
    }
    return (scaled * eig.vectors.adjoint()).hermitized();
}

LeastSquaresResult least_squares_solve(const ComplexMatrix& a, const ComplexVector& b,
                                       double tol) {
    if (a.rows() == 0 || a.cols() == 0) {
        throw std::invalid_argument("least_squares_solve: empty matrix");
    }
    if (b.size() != a.rows()) {
        throw std::invalid_argument("least_squares_solve: rhs length mismatch");
    }
    const ComplexMatrix h = (a.adjoint() * a).hermitized();
    const ComplexVector rhs = multiply(a.adjoint(), b);
    const HermitianEigen eig = hermitian_eig(h);

    ComplexVector x(a.cols(), cplx(0.0, 0.0));
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        const double sigma = std::sqrt(std::max(0.0, eig.values[k]));
        if (sigma <= tol) {
            continue;
        }
        const ComplexVector vk = eig.vectors.column(k);
        const cplx coeff = kernels::cdotc(vk.size(), vk.data(), rhs.data()) / eig.values[k];
        kernels::caxpy(x.size(), coeff, vk.data(), x.data());
    }

    ComplexVector ax = multiply(a, x);
    double rsq = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        rsq += std::norm(ax[i] - b[i]);
    }
    return {std::move(x), std::sqrt(rsq)};
}

double min_eigenvalue(const ComplexMatrix& h) {
    if (!h.is_square()) {
        throw std::invalid_argument("min_eigenvalue: matrix not square");
    }
    if (h.hermiticity_residual() > kHermTol) {
        throw std::invalid_argument("min_eigenvalue: matrix not Hermitian within 1e-9");
    }
    if (h.rows() == 0) {
        throw std::invalid_argument("min_eigenvalue: empty matrix");
    }
    return hermitian_eig(h).values.front();
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    if (a.hermiticity_residual() > 1e-6 * std::max(1.0, a.frobenius_norm())) {
        throw std::invalid_argument("fidelity: first argument not Hermitian");
    }
    const ComplexMatrix root_b = matrix_sqrt_psd(b);
    if (min_eigenvalue(a.hermitized()) < -1e-6 * std::max(a.frobenius_norm(), 1e-30) - 1e-12) {
        throw std::invalid_argument("fidelity: first argument not PSD");
    }
    const ComplexMatrix inner = (root_b * a * root_b).hermitized();
    const HermitianEigen eig = hermitian_eig(inner);
    double f = 0.0;
    for (double v : eig.values) {
        f += std::sqrt(std::max(0.0, v));
    }
    return f;
}

namespace detail {

std::optional<ComplexMatrix> try_cholesky(const ComplexMatrix& m) {
    if (!m.is_square()) {
        throw std::invalid_argument("try_cholesky: matrix not square");
    }
    const std::size_t n = m.rows();
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) {
            d -= std::norm(l(j, k));
        }
        if (!(d > 0.0)) {
            return std::nullopt;
        }
        const double root = std::sqrt(d);
        l(j, j) = cplx(root, 0.0);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = s / root;
        }
    }
    return l;
}

double log_det_from_cholesky(const ComplexMatrix& lower) {
    double s = 0.0;
    for (std::size_t i = 0; i < lower.rows(); ++i) {
        s += std::log(lower(i, i).real());
    }
    return 2.0 * s;
}

}  // namespace detail

}  // namespace uqsd
