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

#ifndef UQSD_SDP_HPP
#define UQSD_SDP_HPP

#include <vector>

#include "uqsd/decompose.hpp"
#include "uqsd/model.hpp"

namespace uqsd {

/// Gram matrix of all core ensemble vectors in block order
/// (block 0 = shared part, blocks 1..m = per-state cores), with the
/// priors of the m states. Positive definite because core supports are
/// pairwise independent and each eigen-ensemble is independent.
struct GramProblem {
    ComplexMatrix xtilde;                 // N x N Hermitian, N = sum block_sizes
    std::vector<std::size_t> block_sizes; // n_0, n_1, ..., n_m
    std::vector<double> priors;           // eta_1 .. eta_m

    std::size_t total_dim() const;
    std::size_t block_offset(std::size_t i) const;
};

struct GramBuild {
    GramProblem problem;
    std::vector<Ensemble> ensembles;  // index 0 = core0, then per state
};

GramBuild build_gram(const CoreSplit& split, const std::vector<double>& priors,
                     const Tolerances& tol = {});

struct SolverConfig {
    double mu_initial = 1.0;
    double mu_shrink = 0.2;
    double gap_tol = 1e-7;
    std::size_t max_outer = 60;
    std::size_t max_inner = 200;
    double step_backtrack = 0.5;
};

/// Block-diagonal maximizer of sum_i eta_i Tr(Gamma_i) subject to
/// Gamma_i >= 0 and xtilde - Gamma >= 0 (Gamma's block 0 pinned to 0).
struct GammaSolution {
    std::vector<ComplexMatrix> blocks;  // Gamma_1 .. Gamma_m
    std::vector<double> gammas;         // Tr(Gamma_i)
    double objective = 0.0;             // sum eta_i gamma_i
    double min_eig_slack = 0.0;         // min eig of xtilde - Gamma
    double min_eig_gamma = 0.0;         // min over blocks
    bool converged = false;
    std::size_t outer_iterations = 0;
};

/// Log-det barrier with damped Newton centering; mu shrinks
/// geometrically until the duality-gap surrogate clears gap_tol.
/// Deterministic for a fixed config. Exhausted budgets return the best
/// feasible iterate with converged = false.
GammaSolution solve_gram_sdp(const GramProblem& p, const SolverConfig& cfg = {});

struct SolutionCheck {
    double min_eig_slack = 0.0;
    double min_eig_gamma = 0.0;
    double objective = 0.0;
    bool feasible = false;
};

/// Independent recomputation of the feasibility certificates.
SolutionCheck check_solution(const GramProblem& p, const GammaSolution& g,
                             const Tolerances& tol = {});

/// Brute-force verification oracle: exhaustive grid over the diagonal
/// entries of blocks 1..m (a restriction unless all those blocks are
/// scalar), each in [0, xtilde_kk]. Feasibility by minimum eigenvalue.
/// Guarded to at most 4 grid dimensions.
double oracle_grid_search(const GramProblem& p, std::size_t resolution);

}  // namespace uqsd

#endif  // UQSD_SDP_HPP
