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

#ifndef UQSD_DISCRIMINATE_HPP
#define UQSD_DISCRIMINATE_HPP

#include <optional>
#include <vector>

#include "uqsd/decompose.hpp"
#include "uqsd/model.hpp"
#include "uqsd/sdp.hpp"

namespace uqsd {

/// Measurement: PSD operators summing to the identity. Index 0 is the
/// inconclusive outcome; index i >= 1 claims state i-1.
struct POVM {
    std::vector<ComplexMatrix> operators;

    std::size_t num_outcomes() const { return operators.size(); }
    double completeness_residual() const;  // ||sum - I||_F
};

/// Closed-form cap on the success probability:
/// sum_i eta_i Tr(core_i) - sqrt(m/(m-1) * sum_{i != j} eta_i eta_j F^2),
/// the pair sum running over ordered pairs of core fidelities.
double upper_bound(const CoreSplit& split, const std::vector<double>& priors);

struct OptimizeReport {
    bool feasible = false;
    bool converged = false;
    std::vector<double> gammas;       // per-state success probabilities
    double total_p = 0.0;             // sum eta_i gamma_i
    double upper_bound_value = 0.0;
    std::vector<double> core_traces;
    double cert_min_eig_slack = 0.0;
    double cert_min_eig_gamma = 0.0;
    CoreSplit split;
    std::vector<Ensemble> ensembles;       // populated when feasible
    std::optional<GramProblem> problem;    // populated when feasible
    std::optional<GammaSolution> solution; // populated when feasible
};

/// Full pipeline: core split, feasibility, Gram build, SDP solve.
/// Infeasible instances report P = 0 and which cores vanished.
OptimizeReport optimize(const DiscriminationInstance& instance,
                        const SolverConfig& cfg = {}, const Tolerances& tol = {});

/// Reciprocal-frame synthesis: Phi = Psi X^-1, Pi_i = Phi_i Gamma_i
/// Phi_i†, Pi_0 = I - sum. Positivity of Pi_0 is inherited from the
/// solution certificate X - Gamma >= 0.
POVM synthesize_povm(const DiscriminationInstance& instance, const CoreSplit& split,
                     const std::vector<Ensemble>& ensembles, const GammaSolution& g,
                     const Tolerances& tol = {});

struct PovmVerification {
    double max_cross_trace = 0.0;       // max_{i != j} |Tr(Pi_i rho_j)|
    double max_core0_trace = 0.0;       // max_i |Tr(Pi_i core0)|
    double max_core_cross_trace = 0.0;  // same conditions against the cores
    double min_operator_eig = 0.0;
    double completeness_residual = 0.0;
    std::vector<double> successes;      // Tr(Pi_i rho_i)
    bool unambiguous = false;
};

/// Checks the zero-error conditions both directly against the states
/// and against the cores; for PSD pairs Tr(AB) = 0 iff AB = 0, so the
/// trace residuals certify the operator conditions.
PovmVerification verify_povm(const DiscriminationInstance& instance,
                             const CoreSplit& split, const POVM& p,
                             const Tolerances& tol = {});

}  // namespace uqsd

#endif  // UQSD_DISCRIMINATE_HPP
