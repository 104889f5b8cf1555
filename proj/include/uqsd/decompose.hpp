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

#ifndef UQSD_DECOMPOSE_HPP
#define UQSD_DECOMPOSE_HPP

#include <utility>
#include <vector>

#include "uqsd/model.hpp"
#include "uqsd/subspace.hpp"

namespace uqsd {

/// Per-state split of an instance: rho_i = core_i + residue_i, where
/// the residue's support is exactly the mix space (the part of the
/// support shared with the other states) and the core's support meets
/// it only at zero. core0 collects all residues.
struct CoreSplit {
    std::vector<DensityOperator> cores;     // rho~_1 .. rho~_m
    std::vector<DensityOperator> residues;  // rho^_1 .. rho^_m
    DensityOperator core0;                  // sum of residues
    std::vector<Subspace> mix_spaces;

    std::size_t num_states() const { return cores.size(); }
};

/// Split of a rank-1 factor Psi (columns are unnormalized ensemble
/// vectors of rho = Psi Psi†) against a subspace M of the range:
/// mixed_factor spans exactly M, core_factor's span meets M at zero,
/// and mixed·mixed† + core·core† = rho. Works for any factor whose
/// range contains M, including unitarily remixed and redundant ones.
struct FactorSplit {
    ComplexMatrix mixed_factor;  // ambient x dim(M)
    ComplexMatrix core_factor;   // ambient x (cols(Psi) - dim(M))
};

FactorSplit split_factor(const ComplexMatrix& psi, const Subspace& m_space,
                         const Tolerances& tol = {});

/// Unique decomposition rho = rho1 + rho2 with supp(rho1) = m_space and
/// supp(rho2) ∩ m_space = {0}. Requires m_space ⊆ supp(rho).
std::pair<DensityOperator, DensityOperator> split_by_subspace(const DensityOperator& rho,
                                                              const Subspace& m_space,
                                                              const Tolerances& tol = {});

/// supp(rho_i) ∩ Σ_{j≠i} supp(rho_j). Index is zero-based.
Subspace mix_space(const DiscriminationInstance& instance, std::size_t i,
                   const Tolerances& tol = {});

CoreSplit core_split(const DiscriminationInstance& instance, const Tolerances& tol = {});

/// A state is discriminable iff its core is nonzero; the whole family
/// iff every state is. core_traces carry the margins.
struct Feasibility {
    std::vector<bool> discriminable;
    std::vector<double> core_traces;
    bool all = false;
};

Feasibility feasible(const CoreSplit& split, const Tolerances& tol = {});

}  // namespace uqsd

#endif  // UQSD_DECOMPOSE_HPP
