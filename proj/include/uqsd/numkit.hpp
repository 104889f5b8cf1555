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

#ifndef UQSD_NUMKIT_HPP
#define UQSD_NUMKIT_HPP

#include <optional>
#include <vector>

#include "uqsd/complex_matrix.hpp"

namespace uqsd {

/// Full spectral decomposition of a Hermitian matrix: values ascending,
/// columns of `vectors` the matching orthonormal eigenvectors.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

/// Cyclic complex Jacobi diagonalization. Deterministic sweep order, so
/// identical input bits give identical output bits. If `hermitize` is
/// false the input must already be Hermitian within 1e-9.
HermitianEigen hermitian_eig(const ComplexMatrix& m, bool hermitize = false);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors
/// whose residual norm is at most `tol` are dropped.
std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& vectors,
                                        double tol);

/// Extends orthonormal columns to a full unitary; the input columns are
/// kept verbatim as the leading columns.
ComplexMatrix complete_to_unitary(const ComplexMatrix& orthonormal_cols);

/// Principal square root of a PSD matrix. Eigenvalues in
/// [-1e-6*norm, 0) are clamped to zero; anything lower is rejected.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

struct LeastSquaresResult {
    ComplexVector x;
    double residual;  // ||a*x - b||
};

/// Minimum-norm least-squares solution of a*x = b via the spectral
/// pseudo-inverse of a; singular values at or below `tol` count as zero.
LeastSquaresResult least_squares_solve(const ComplexMatrix& a, const ComplexVector& b,
                                       double tol);

double min_eigenvalue(const ComplexMatrix& h);

/// Fidelity F(a,b) = Tr sqrt(sqrt(b) a sqrt(b)) for PSD a, b. Accepts
/// subnormalized inputs.
double fidelity(const ComplexMatrix& a, const ComplexMatrix& b);

namespace detail {

// Cholesky of a Hermitian matrix; nullopt when not positive definite.
// Used for fast PD tests and log-determinants inside the SDP solver.
std::optional<ComplexMatrix> try_cholesky(const ComplexMatrix& m);

double log_det_from_cholesky(const ComplexMatrix& lower);

}  // namespace detail

}  // namespace uqsd

#endif  // UQSD_NUMKIT_HPP
