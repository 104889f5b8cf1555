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

#include "uqsd/subspace.hpp"

#include <cmath>
#include <stdexcept>

#include "uqsd/numkit.hpp"

namespace uqsd {

ComplexMatrix Subspace::projector() const {
    if (dim() == 0) {
        return ComplexMatrix(ambient_dim, ambient_dim);
    }
    return basis * basis.adjoint();
}

Subspace Subspace::zero(std::size_t ambient_dim) {
    Subspace s;
    s.ambient_dim = ambient_dim;
    s.basis = ComplexMatrix(ambient_dim, 0);
    return s;
}

Subspace Subspace::from_spanning(std::size_t ambient_dim,
                                 const std::vector<ComplexVector>& vectors,
                                 double drop_tol) {
    if (vectors.empty()) {
        return zero(ambient_dim);
    }
    const std::vector<ComplexVector> basis_vecs = gram_schmidt(vectors, drop_tol);
    Subspace s;
    s.ambient_dim = ambient_dim;
    s.basis = matrix_from_columns(ambient_dim, basis_vecs);
    return s;
}

Subspace support(const ComplexMatrix& psd, const Tolerances& tol) {
    if (!psd.is_square()) {
        throw std::invalid_argument("support: matrix not square");
    }
    const HermitianEigen eig = hermitian_eig(psd, true);
    const std::size_t n = psd.rows();
    const double lambda_max = eig.values.empty() ? 0.0 : eig.values.back();
    if (!eig.values.empty() && eig.values.front() < -tol.psd) {
        throw std::invalid_argument("support: matrix not PSD within tolerance");
    }
    const double cutoff = tol.rank_cutoff(lambda_max);
    std::vector<ComplexVector> kept;
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] > cutoff) {
            kept.push_back(eig.vectors.column(k));
        }
    }
    Subspace s;
    s.ambient_dim = n;
    s.basis = matrix_from_columns(n, kept);
    return s;
}

Subspace sum(const std::vector<Subspace>& spaces) {
    if (spaces.empty()) {
        throw std::invalid_argument("sum: no subspaces given");
    }
    const std::size_t dim = spaces.front().ambient_dim;
    std::vector<ComplexVector> all;
    for (const Subspace& s : spaces) {
        if (s.ambient_dim != dim) {
            throw std::invalid_argument("sum: ambient dimension mismatch");
        }
        for (std::size_t j = 0; j < s.dim(); ++j) {
            all.push_back(s.basis.column(j));
        }
    }
    return Subspace::from_spanning(dim, all);
}

Subspace intersect(const Subspace& a, const Subspace& b, const Tolerances& tol) {
    if (a.ambient_dim != b.ambient_dim) {
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    }
    const std::size_t n = a.ambient_dim;
    if (a.dim() == 0 || b.dim() == 0) {
        return Subspace::zero(n);
    }
    const ComplexMatrix pa = a.projector();
    const ComplexMatrix pb = b.projector();
    const ComplexMatrix pab = (pa * pb * pa).hermitized();
    const HermitianEigen eig = hermitian_eig(pab);
    std::vector<ComplexVector> kept;
    for (std::size_t k = 0; k < n; ++k) {
        if (eig.values[k] >= 1.0 - tol.intersect) {
            kept.push_back(eig.vectors.column(k));
        }
    }
    Subspace s;
    s.ambient_dim = n;
    s.basis = matrix_from_columns(n, kept);
    return s;
}

double containment_residual(const Subspace& outer, const Subspace& inner) {
    if (outer.ambient_dim != inner.ambient_dim) {
        throw std::invalid_argument("containment: ambient dimension mismatch");
    }
    if (inner.dim() == 0) {
        return 0.0;
    }
    const ComplexMatrix proj = outer.projector();
    double worst = 0.0;
    for (std::size_t j = 0; j < inner.dim(); ++j) {
        const ComplexVector col = inner.basis.column(j);
        const ComplexVector projected = multiply(proj, col);
        double rsq = 0.0;
        for (std::size_t i = 0; i < col.size(); ++i) {
            rsq += std::norm(col[i] - projected[i]);
        }
        worst = std::max(worst, std::sqrt(rsq));
    }
    return worst;
}

bool contains(const Subspace& outer, const Subspace& inner, const Tolerances& tol) {
    return containment_residual(outer, inner) <= tol.intersect;
}

}  // namespace uqsd
