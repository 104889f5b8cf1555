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

#include "uqsd/model.hpp"

#include <cmath>
#include <stdexcept>

#include "uqsd/numkit.hpp"
#include "uqsd/rng.hpp"

namespace uqsd {

DensityOperator DensityOperator::checked(ComplexMatrix m, const Tolerances& tol) {
    if (!m.is_square()) {
        throw std::invalid_argument("DensityOperator: matrix not square");
    }
    if (!m.all_finite()) {
        throw std::invalid_argument("DensityOperator: non-finite entries");
    }
    if (m.hermiticity_residual() > tol.psd) {
        throw std::invalid_argument("DensityOperator: matrix not Hermitian");
    }
    if (m.rows() > 0 && min_eigenvalue(m.hermitized()) < -tol.psd) {
        throw std::invalid_argument("DensityOperator: matrix not PSD");
    }
    DensityOperator rho(std::move(m));
    if (rho.trace_value > 1.0 + tol.psd) {
        throw std::invalid_argument("DensityOperator: trace exceeds 1");
    }
    return rho;
}

std::vector<double> DiscriminationInstance::priors() const {
    std::vector<double> p;
    p.reserve(entries.size());
    for (const InstanceEntry& e : entries) {
        p.push_back(e.prior);
    }
    return p;
}

ValidationResult validate_instance(const std::vector<ComplexMatrix>& matrices,
                                   const std::vector<double>& priors,
                                   const Tolerances& tol, bool normalize_priors) {
    ValidationResult result;
    auto flag = [&result](std::string code, std::size_t index, double residual) {
        result.violations.push_back({std::move(code), index, residual});
    };

    if (matrices.size() != priors.size()) {
        flag("state_prior_count_mismatch", Violation::kGlobal,
             static_cast<double>(matrices.size()) - static_cast<double>(priors.size()));
        return result;
    }
    if (matrices.size() < 2) {
        flag("too_few_states", Violation::kGlobal, static_cast<double>(matrices.size()));
        return result;
    }

    const std::size_t dim = matrices.front().rows();
    double prior_sum = 0.0;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        const ComplexMatrix& m = matrices[i];
        if (!m.is_square() || m.rows() != dim) {
            flag("dim_mismatch", i, static_cast<double>(m.rows()));
            continue;
        }
        if (!m.all_finite()) {
            flag("not_finite", i, 0.0);
            continue;
        }
        const double herm = m.hermiticity_residual();
        if (herm > tol.psd) {
            flag("not_hermitian", i, herm);
            continue;
        }
        const double min_eig = min_eigenvalue(m.hermitized());
        if (min_eig < -tol.psd) {
            flag("not_psd", i, -min_eig);
        }
        const double trace = m.trace().real();
        if (std::abs(trace - 1.0) > tol.psd) {
            flag("trace", i, std::abs(trace - 1.0));
        }
        if (!(priors[i] > 0.0)) {
            flag("prior_nonpositive", i, priors[i]);
        }
        prior_sum += priors[i];
    }

    std::vector<double> used_priors = priors;
    if (!normalize_priors && std::abs(prior_sum - 1.0) > tol.psd) {
        flag("prior_sum", Violation::kGlobal, std::abs(prior_sum - 1.0));
    } else if (normalize_priors) {
        if (!(prior_sum > 0.0)) {
            flag("prior_sum", Violation::kGlobal, prior_sum);
        } else {
            for (double& p : used_priors) {
                p /= prior_sum;
            }
        }
    }

    if (!result.violations.empty()) {
        return result;
    }

    DiscriminationInstance inst;
    inst.dim = dim;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        inst.entries.push_back({used_priors[i], DensityOperator(matrices[i])});
    }
    result.instance = std::move(inst);
    return result;
}

DiscriminationInstance random_instance(std::size_t dim, std::size_t m,
                                       const std::vector<std::size_t>& ranks,
                                       std::uint64_t seed) {
    if (m < 2) {
        throw std::invalid_argument("random_instance: need at least two states");
    }
    if (ranks.size() != m) {
        throw std::invalid_argument("random_instance: one rank per state required");
    }
    for (std::size_t r : ranks) {
        if (r == 0 || r > dim) {
            throw std::invalid_argument("random_instance: rank out of range");
        }
    }
    SplitMix64 rng(seed);
    DiscriminationInstance inst;
    inst.dim = dim;

    std::vector<double> priors(m);
    double prior_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double u = rng.uniform();
        while (u <= 0.0) {
            u = rng.uniform();
        }
        priors[i] = -std::log(u);  // exponentials normalize to a flat simplex draw
        prior_sum += priors[i];
    }
    for (double& p : priors) {
        p /= prior_sum;
    }

    for (std::size_t i = 0; i < m; ++i) {
        ComplexMatrix g(dim, ranks[i]);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < ranks[i]; ++c) {
                g(r, c) = cplx(rng.gaussian(), rng.gaussian());
            }
        }
        ComplexMatrix rho = (g * g.adjoint()).hermitized();
        const double trace = rho.trace().real();
        rho *= cplx(1.0 / trace, 0.0);
        inst.entries.push_back({priors[i], DensityOperator(rho.hermitized())});
    }
    return inst;
}

ComplexMatrix Ensemble::reconstruct() const {
    ComplexMatrix sum(dim, dim);
    for (const ComplexVector& v : vectors) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                sum(i, j) += v[i] * std::conj(v[j]);
            }
        }
    }
    return sum;
}

Ensemble ensemble_of(const DensityOperator& rho, const Tolerances& tol) {
    const ComplexMatrix& m = rho.matrix;
    if (!m.is_square()) {
        throw std::invalid_argument("ensemble_of: matrix not square");
    }
    const HermitianEigen eig = hermitian_eig(m, true);
    const double lambda_max = eig.values.empty() ? 0.0 : eig.values.back();
    if (!eig.values.empty() && eig.values.front() < -tol.psd) {
        throw std::invalid_argument("ensemble_of: matrix not PSD");
    }
    const double cutoff = tol.rank_cutoff(lambda_max);

    Ensemble ens;
    ens.dim = m.rows();
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        if (eig.values[k] <= cutoff) {
            continue;
        }
        ComplexVector v = eig.vectors.column(k);
        const double w = std::sqrt(eig.values[k]);
        for (cplx& e : v) {
            e *= w;
        }
        ens.vectors.push_back(std::move(v));
    }
    return ens;
}

MergedSets merge_sets(const SetInstance& s) {
    if (s.num_sets() < 2) {
        throw std::invalid_argument("merge_sets: need at least two sets");
    }
    MergedSets out;
    out.instance.dim = s.dim;
    std::size_t flat = 0;
    for (std::size_t i = 0; i < s.num_sets(); ++i) {
        const auto& members = s.sets[i];
        if (members.empty()) {
            throw std::invalid_argument("merge_sets: empty set");
        }
        double set_prior = 0.0;
        for (const SetEntry& e : members) {
            set_prior += e.prior;
        }
        if (!(set_prior > 0.0)) {
            throw std::invalid_argument("merge_sets: set has zero total prior");
        }
        ComplexMatrix avg(s.dim, s.dim);
        std::vector<std::size_t> indices;
        for (const SetEntry& e : members) {
            if (e.state.dim() != s.dim) {
                throw std::invalid_argument("merge_sets: member dimension mismatch");
            }
            avg += e.state.matrix * cplx(e.prior / set_prior, 0.0);
            indices.push_back(flat++);
        }
        out.instance.entries.push_back({set_prior, DensityOperator(avg.hermitized())});
        out.set_priors.push_back(set_prior);
        out.member_of_set.push_back(std::move(indices));
    }
    return out;
}

}  // namespace uqsd
