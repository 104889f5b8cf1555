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

#include "uqsd/discriminate.hpp"

#include <cmath>
#include <stdexcept>

#include "uqsd/numkit.hpp"

namespace uqsd {

double POVM::completeness_residual() const {
    if (operators.empty()) {
        return 0.0;
    }
    ComplexMatrix sum(operators.front().rows(), operators.front().cols());
    for (const ComplexMatrix& op : operators) {
        sum += op;
    }
    return (sum - ComplexMatrix::identity(sum.rows())).frobenius_norm();
}

double upper_bound(const CoreSplit& split, const std::vector<double>& priors) {
    const std::size_t m = split.num_states();
    if (priors.size() != m) {
        throw std::invalid_argument("upper_bound: one prior per state required");
    }
    double trace_part = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        trace_part += priors[i] * split.cores[i].trace_value;
    }
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double f = fidelity(split.cores[i].matrix, split.cores[j].matrix);
            pair_sum += 2.0 * priors[i] * priors[j] * f * f;  // ordered pairs
        }
    }
    const double ratio = static_cast<double>(m) / static_cast<double>(m - 1);
    return trace_part - std::sqrt(ratio * pair_sum);
}

OptimizeReport optimize(const DiscriminationInstance& instance, const SolverConfig& cfg,
                        const Tolerances& tol) {
    if (instance.num_states() < 2) {
        throw std::invalid_argument("optimize: need at least two states");
    }
    OptimizeReport report;
    report.split = core_split(instance, tol);
    const Feasibility feas = feasible(report.split, tol);
    const std::vector<double> priors = instance.priors();
    report.core_traces = feas.core_traces;
    report.upper_bound_value = upper_bound(report.split, priors);
    report.feasible = feas.all;
    if (!feas.all) {
        report.gammas.assign(instance.num_states(), 0.0);
        report.total_p = 0.0;
        report.converged = true;  // nothing to solve
        return report;
    }

    GramBuild gb = build_gram(report.split, priors, tol);
    GammaSolution sol = solve_gram_sdp(gb.problem, cfg);
    report.converged = sol.converged;
    report.gammas = sol.gammas;
    report.total_p = sol.objective;
    report.cert_min_eig_slack = sol.min_eig_slack;
    report.cert_min_eig_gamma = sol.min_eig_gamma;
    report.ensembles = std::move(gb.ensembles);
    report.problem = std::move(gb.problem);
    report.solution = std::move(sol);
    return report;
}

POVM synthesize_povm(const DiscriminationInstance& instance, const CoreSplit& split,
                     const std::vector<Ensemble>& ensembles, const GammaSolution& g,
                     const Tolerances& tol) {
    const std::size_t m = instance.num_states();
    if (ensembles.size() != m + 1 || g.blocks.size() != m) {
        throw std::invalid_argument("synthesize_povm: ensemble/solution count mismatch");
    }
    const std::size_t dim = instance.dim;

    std::vector<ComplexVector> all;
    std::vector<std::size_t> offsets(m + 1, 0);
    for (std::size_t i = 0; i <= m; ++i) {
        offsets[i] = all.size();
        for (const ComplexVector& v : ensembles[i].vectors) {
            all.push_back(v);
        }
    }
    const std::size_t n = all.size();
    if (n == 0) {
        throw std::invalid_argument("synthesize_povm: no ensemble vectors");
    }
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t bn = ensembles[i].size();
        if (g.blocks[i - 1].rows() != bn) {
            throw std::invalid_argument("synthesize_povm: block size mismatch");
        }
    }

    const ComplexMatrix psi = matrix_from_columns(dim, all);
    const ComplexMatrix xt = (psi.adjoint() * psi).hermitized();

    // Certificates first: the construction is only valid on a feasible
    // solution (X - Gamma >= 0 makes Pi_0 positive).
    ComplexMatrix slack = xt;
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t off = offsets[i];
        const ComplexMatrix& blk = g.blocks[i - 1];
        for (std::size_t a = 0; a < blk.rows(); ++a) {
            for (std::size_t b = 0; b < blk.cols(); ++b) {
                slack(off + a, off + b) -= blk(a, b);
            }
        }
        if (blk.rows() > 0 && min_eigenvalue(blk.hermitized()) < -tol.psd) {
            throw std::invalid_argument("synthesize_povm: gamma block not PSD");
        }
    }
    if (min_eigenvalue(slack.hermitized()) < -tol.psd) {
        throw std::invalid_argument("synthesize_povm: solution violates X - Gamma >= 0");
    }

    const HermitianEigen xeig = hermitian_eig(xt);
    if (xeig.values.front() <= tol.rank_cutoff(xeig.values.back())) {
        throw std::invalid_argument("synthesize_povm: gram matrix singular");
    }
    ComplexMatrix xinv_scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double inv = 1.0 / xeig.values[j];
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            xinv_scaled(i2, j) = xeig.vectors(i2, j) * inv;
        }
    }
    const ComplexMatrix xinv = (xinv_scaled * xeig.vectors.adjoint()).hermitized();
    const ComplexMatrix phi = psi * xinv;  // reciprocal frame; Phi† Psi = I

    POVM povm;
    povm.operators.resize(m + 1);
    ComplexMatrix sum(dim, dim);
    for (std::size_t i = 1; i <= m; ++i) {
        const ComplexMatrix phi_i = phi.columns(offsets[i], ensembles[i].size());
        ComplexMatrix pi = (phi_i * g.blocks[i - 1] * phi_i.adjoint()).hermitized();
        sum += pi;
        povm.operators[i] = std::move(pi);
    }
    povm.operators[0] = ComplexMatrix::identity(dim) - sum;
    return povm;
}

PovmVerification verify_povm(const DiscriminationInstance& instance,
                             const CoreSplit& split, const POVM& p,
                             const Tolerances& tol) {
    const std::size_t m = instance.num_states();
    if (p.num_outcomes() != m + 1) {
        throw std::invalid_argument("verify_povm: outcome count mismatch");
    }
    const std::size_t dim = instance.dim;
    for (const ComplexMatrix& op : p.operators) {
        if (op.rows() != dim || op.cols() != dim) {
            throw std::invalid_argument("verify_povm: operator dimension mismatch");
        }
    }

    PovmVerification v;
    v.completeness_residual = p.completeness_residual();
    v.min_operator_eig = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
        const double me = min_eigenvalue(p.operators[k].hermitized());
        v.min_operator_eig = k == 0 ? me : std::min(v.min_operator_eig, me);
    }
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double t =
                std::abs((p.operators[i] * instance.entries[j].state.matrix).trace());
            if (j + 1 == i) {
                v.successes.push_back(
                    (p.operators[i] * instance.entries[j].state.matrix).trace().real());
            } else {
                v.max_cross_trace = std::max(v.max_cross_trace, t);
            }
            const double tc = std::abs((p.operators[i] * split.cores[j].matrix).trace());
            if (j + 1 != i) {
                v.max_core_cross_trace = std::max(v.max_core_cross_trace, tc);
            }
        }
        const double t0 = std::abs((p.operators[i] * split.core0.matrix).trace());
        v.max_core0_trace = std::max(v.max_core0_trace, t0);
        v.max_core_cross_trace = std::max(v.max_core_cross_trace, t0);
    }
    v.unambiguous = v.max_cross_trace <= tol.verify && v.max_core0_trace <= tol.verify &&
                    v.min_operator_eig >= -tol.verify &&
                    v.completeness_residual <= tol.verify;
    return v;
}

}  // namespace uqsd
