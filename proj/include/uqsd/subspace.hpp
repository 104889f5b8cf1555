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

#ifndef UQSD_SUBSPACE_HPP
#define UQSD_SUBSPACE_HPP

#include <vector>

#include "uqsd/complex_matrix.hpp"
#include "uqsd/tolerances.hpp"

namespace uqsd {

/// A subspace of C^ambient_dim held as an orthonormal basis. The zero
/// space is a first-class value (zero columns). Bases are not canonical;
/// every comparison goes through projectors.
struct Subspace {
    std::size_t ambient_dim = 0;
    ComplexMatrix basis;  // ambient_dim x k, orthonormal columns

    std::size_t dim() const { return basis.cols(); }
    ComplexMatrix projector() const;

    static Subspace zero(std::size_t ambient_dim);
    // Orthonormalizes arbitrary spanning vectors into a subspace.
    static Subspace from_spanning(std::size_t ambient_dim,
                                  const std::vector<ComplexVector>& vectors,
                                  double drop_tol = 1e-9);
};

/// Span of the eigenvectors of a PSD matrix above the rank cutoff.
Subspace support(const ComplexMatrix& psd, const Tolerances& tol = {});

Subspace sum(const std::vector<Subspace>& spaces);

/// a ∩ b via the spectrum of P_a P_b P_a: eigenvectors with eigenvalue
/// >= 1 - tol.intersect (cos^2 of the principal angle).
Subspace intersect(const Subspace& a, const Subspace& b, const Tolerances& tol = {});

/// True iff every basis column of `inner` lies in `outer` within
/// tol.intersect column residual.
bool contains(const Subspace& outer, const Subspace& inner, const Tolerances& tol = {});

/// Largest column residual ||(I - P_outer) b_j||; 0 for the zero space.
double containment_residual(const Subspace& outer, const Subspace& inner);

}  // namespace uqsd

#endif  // UQSD_SUBSPACE_HPP
