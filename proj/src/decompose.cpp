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

#include "uqsd/decompose.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uqsd/numkit.hpp"

namespace uqsd {

FactorSplit split_factor(const ComplexMatrix& psi, const Subspace& m_space,
                         const Tolerances& tol) {
    const std::size_t ambient = psi.rows();
    const std::size_t k = psi.cols();
    if (m_space.ambient_dim != ambient) {
        throw std::invalid_argument("split_factor: ambient dimension mismatch");
    }
    if (m_space.dim() == 0) {
        return {ComplexMatrix(ambient, 0), psi};
    }
    if (k == 0) {
        throw std::invalid_argument("split_factor: empty factor cannot cover subspace");
    }

    // Singular-value cutoff for the pseudo-inverse, relative to the
    // largest singular value of psi.
    const HermitianEigen gram_eig = hermitian_eig((psi.adjoint() * psi).hermitized());
    const double sigma_max = std::sqrt(std::max(0.0, gram_eig.values.back()));
    const double sigma_cut = std::max(std::sqrt(tol.rank_abs), tol.rank_rel * sigma_max);

    // Preimages of the subspace basis under psi; they live in
    // coefficient space C^k.
    std::vector<ComplexVector> preimages;
    for (std::size_t j = 0; j < m_space.dim(); ++j) {
        const ComplexVector b = m_space.basis.column(j);
        const LeastSquaresResult ls = least_squares_solve(psi, b, sigma_cut);
        if (ls.residual > 1e-6) {
            throw std::invalid_argument(
                "split_factor: subspace not inside the factor range (residual " +
                std::to_string(ls.residual) + ")");
        }
        preimages.push_back(ls.x);
    }

    const std::vector<ComplexVector> u1_cols = gram_schmidt(preimages, 1e-8);
    if (u1_cols.size() != m_space.dim()) {
        throw std::invalid_argument(
            "split_factor: rank deficiency inconsistent with subspace dimension");
    }
    const ComplexMatrix u1 = matrix_from_columns(k, u1_cols);
    const ComplexMatrix u = complete_to_unitary(u1);
    const ComplexMatrix u2 = u.columns(m_space.dim(), k - m_space.dim());
    return {psi * u1, psi * u2};
}

std::pair<DensityOperator, DensityOperator> split_by_subspace(const DensityOperator& rho,
                                                              const Subspace& m_space,
                                                              const Tolerances& tol) {
    const std::size_t n = rho.dim();
    if (m_space.ambient_dim != n) {
        throw std::invalid_argument("split_by_subspace: ambient dimension mismatch");
    }
    const Subspace supp = support(rho, tol);
    const double residual = containment_residual(supp, m_space);
    if (residual > tol.intersect) {
        throw std::invalid_argument(
            "split_by_subspace: subspace not contained in the support (residual " +
            std::to_string(residual) + ")");
    }
    if (m_space.dim() == 0) {
        return {DensityOperator::zero(n), rho};
    }
    if (m_space.dim() == supp.dim()) {
        return {rho, DensityOperator::zero(n)};
    }

    const Ensemble ens = ensemble_of(rho, tol);
    const FactorSplit fs = split_factor(ens.as_matrix(), m_space, tol);
    ComplexMatrix rho1 = (fs.mixed_factor * fs.mixed_factor.adjoint()).hermitized();
    ComplexMatrix rho2 = (fs.core_factor * fs.core_factor.adjoint()).hermitized();
    return {DensityOperator(std::move(rho1)), DensityOperator(std::move(rho2))};
}

Subspace mix_space(const DiscriminationInstance& instance, std::size_t i,
                   const Tolerances& tol) {
    const std::size_t m = instance.num_states();
    if (i >= m) {
        throw std::invalid_argument("mix_space: state index out of range");
    }
    std::vector<Subspace> others;
    others.reserve(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        if (j != i) {
            others.push_back(support(instance.entries[j].state, tol));
        }
    }
    const Subspace own = support(instance.entries[i].state, tol);
    return intersect(own, sum(others), tol);
}

CoreSplit core_split(const DiscriminationInstance& instance, const Tolerances& tol) {
    const std::size_t m = instance.num_states();
    if (m < 2) {
        throw std::invalid_argument("core_split: need at least two states");
    }
    CoreSplit split;
    ComplexMatrix core0_sum(instance.dim, instance.dim);
    for (std::size_t i = 0; i < m; ++i) {
        Subspace mix = mix_space(instance, i, tol);
        auto [residue, core] = split_by_subspace(instance.entries[i].state, mix, tol);
        core0_sum += residue.matrix;
        split.cores.push_back(std::move(core));
        split.residues.push_back(std::move(residue));
        split.mix_spaces.push_back(std::move(mix));
    }
    split.core0 = DensityOperator(core0_sum.hermitized());
    return split;
}

Feasibility feasible(const CoreSplit& split, const Tolerances& tol) {
    Feasibility f;
    const double cutoff = tol.rank_cutoff(1.0);
    f.all = true;
    for (const DensityOperator& core : split.cores) {
        const double trace = core.trace_value;
        const bool ok = trace > cutoff;
        f.discriminable.push_back(ok);
        f.core_traces.push_back(trace);
        f.all = f.all && ok;
    }
    return f;
}

}  // namespace uqsd
