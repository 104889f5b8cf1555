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

#ifndef UQSD_MODEL_HPP
#define UQSD_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uqsd/complex_matrix.hpp"
#include "uqsd/subspace.hpp"
#include "uqsd/tolerances.hpp"

namespace uqsd {

/// Hermitian PSD operator, possibly subnormalized. Full states carry
/// trace 1; cores and residues carry trace in [0, 1]. The zero operator
/// is legal (a state whose core vanished).
struct DensityOperator {
    ComplexMatrix matrix;
    double trace_value = 0.0;

    DensityOperator() = default;
    explicit DensityOperator(ComplexMatrix m)
        : matrix(std::move(m)), trace_value(matrix.trace().real()) {}

    std::size_t dim() const { return matrix.rows(); }
    bool is_zero(double cutoff) const { return trace_value <= cutoff; }

    static DensityOperator zero(std::size_t dim) {
        return DensityOperator(ComplexMatrix(dim, dim));
    }
    // Validates hermiticity, PSD-ness and trace <= 1 + tol.psd.
    static DensityOperator checked(ComplexMatrix m, const Tolerances& tol = {});
};

struct InstanceEntry {
    double prior = 0.0;
    DensityOperator state;
};

/// The discrimination problem: ambient dimension plus (prior, state)
/// pairs. Valid instances have m >= 2, priors summing to 1, unit traces.
struct DiscriminationInstance {
    std::size_t dim = 0;
    std::vector<InstanceEntry> entries;

    std::size_t num_states() const { return entries.size(); }
    std::vector<double> priors() const;
};

struct Violation {
    std::string code;       // e.g. "not_psd", "prior_sum", "trace"
    std::size_t index = 0;  // offending state, or kGlobal
    double residual = 0.0;

    static constexpr std::size_t kGlobal = static_cast<std::size_t>(-1);
};

struct ValidationResult {
    std::optional<DiscriminationInstance> instance;
    std::vector<Violation> violations;

    bool ok() const { return instance.has_value(); }
};

/// Checks raw matrices + priors and either returns the instance or
/// names every violation with its residual. With `normalize_priors`,
/// positive priors are rescaled to sum 1 instead of being rejected.
ValidationResult validate_instance(const std::vector<ComplexMatrix>& matrices,
                                   const std::vector<double>& priors,
                                   const Tolerances& tol = {},
                                   bool normalize_priors = false);

/// Seeded random instance: states are normalized G G† for complex
/// Gaussian factors G of the requested ranks; priors drawn flat on the
/// simplex. Identical seeds give bit-identical instances.
DiscriminationInstance random_instance(std::size_t dim, std::size_t m,
                                       const std::vector<std::size_t>& ranks,
                                       std::uint64_t seed);

/// Rank-1 decomposition with unnormalized vectors; weights live in the
/// vector norms. The canonical choice everywhere is the eigen-ensemble.
struct Ensemble {
    std::size_t dim = 0;
    std::vector<ComplexVector> vectors;

    std::size_t size() const { return vectors.size(); }
    ComplexMatrix as_matrix() const { return matrix_from_columns(dim, vectors); }
    ComplexMatrix reconstruct() const;
};

/// Eigen-ensemble of a PSD operator: sqrt(lambda_k) v_k over
/// eigenvalues above the rank cutoff.
Ensemble ensemble_of(const DensityOperator& rho, const Tolerances& tol = {});

struct SetEntry {
    double prior = 0.0;  // eta_ik, weight within the whole experiment
    DensityOperator state;
};

/// Disjoint sets of mixed states; the goal is to name the set, not the
/// member. Membership is positional.
struct SetInstance {
    std::size_t dim = 0;
    std::vector<std::vector<SetEntry>> sets;

    std::size_t num_sets() const { return sets.size(); }
};

struct MergedSets {
    DiscriminationInstance instance;     // state i = weighted average of set i
    std::vector<double> set_priors;      // eta'_i
    std::vector<std::vector<std::size_t>> member_of_set;  // flat indices per set
};

/// Set discrimination reduces to state discrimination of the weighted
/// averages rho_i = sum_k (eta_ik / eta'_i) sigma_i^k.
MergedSets merge_sets(const SetInstance& s);

inline Subspace support(const DensityOperator& rho, const Tolerances& tol = {}) {
    return support(rho.matrix, tol);
}

}  // namespace uqsd

#endif  // UQSD_MODEL_HPP
