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

#include "uqsd/sdp.hpp"

#include <cmath>
#include <stdexcept>

#include "uqsd/kernels.hpp"
#include "uqsd/numkit.hpp"

namespace uqsd {

std::size_t GramProblem::total_dim() const {
    std::size_t n = 0;
    for (std::size_t b : block_sizes) {
        n += b;
    }
    return n;
}

std::size_t GramProblem::block_offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t j = 0; j < i; ++j) {
        off += block_sizes[j];
    }
    return off;
}

GramBuild build_gram(const CoreSplit& split, const std::vector<double>& priors,
                     const Tolerances& tol) {
    const std::size_t m = split.num_states();
    if (priors.size() != m) {
        throw std::invalid_argument("build_gram: one prior per state required");
    }
    GramBuild out;
    out.ensembles.push_back(ensemble_of(split.core0, tol));
    for (const DensityOperator& core : split.cores) {
        out.ensembles.push_back(ensemble_of(core, tol));
    }

    std::vector<const ComplexVector*> all;
    for (const Ensemble& ens : out.ensembles) {
        out.problem.block_sizes.push_back(ens.size());
        for (const ComplexVector& v : ens.vectors) {
            all.push_back(&v);
        }
    }
    const std::size_t n = all.size();
    ComplexMatrix x(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            x(a, b) = kernels::cdotc(all[a]->size(), all[a]->data(), all[b]->data());
        }
    }
    out.problem.xtilde = x.hermitized();
    out.problem.priors = priors;
    return out;
}

namespace {

// Real parametrization of the free Hermitian blocks: one coordinate per
// diagonal entry, two per off-diagonal pair. The basis matrices are
// orthonormal under Re Tr(A B), which keeps the Newton system symmetric.
struct Param {
    std::size_t block;  // 1-based block id (block 0 is pinned to zero)
    std::size_t a, b;   // local indices, a <= b
    enum Kind { diag, off_re, off_im } kind;
};

struct Workspace {
    const GramProblem* p = nullptr;
    std::size_t n_total = 0;
    std::vector<std::size_t> offsets;  // per block
    std::vector<Param> params;

    std::size_t local_offset(std::size_t block) const { return offsets[block]; }
};

Workspace make_workspace(const GramProblem& p) {
    Workspace w;
    w.p = &p;
    w.n_total = p.total_dim();
    w.offsets.resize(p.block_sizes.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < p.block_sizes.size(); ++i) {
        w.offsets[i] = off;
        off += p.block_sizes[i];
    }
    for (std::size_t i = 1; i < p.block_sizes.size(); ++i) {
        const std::size_t n = p.block_sizes[i];
        for (std::size_t a = 0; a < n; ++a) {
            w.params.push_back({i, a, a, Param::diag});
        }
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                w.params.push_back({i, a, b, Param::off_re});
                w.params.push_back({i, a, b, Param::off_im});
            }
        }
    }
    return w;
}

ComplexMatrix assemble_slack(const Workspace& w, const std::vector<ComplexMatrix>& blocks) {
    ComplexMatrix s = w.p->xtilde;
    for (std::size_t i = 1; i < w.p->block_sizes.size(); ++i) {
        const std::size_t off = w.offsets[i];
        const ComplexMatrix& g = blocks[i - 1];
        for (std::size_t a = 0; a < g.rows(); ++a) {
            for (std::size_t b = 0; b < g.cols(); ++b) {
                s(off + a, off + b) -= g(a, b);
            }
        }
    }
    return s;
}

ComplexMatrix inverse_from_eig(const HermitianEigen& eig) {
    const std::size_t n = eig.values.size();
    ComplexMatrix scaled(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double inv = 1.0 / eig.values[j];
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) = eig.vectors(i, j) * inv;
        }
    }
    return (scaled * eig.vectors.adjoint()).hermitized();
}

double coord_of(const ComplexMatrix& h, const Param& q) {
    switch (q.kind) {
        case Param::diag:
            return h(q.a, q.a).real();
        case Param::off_re:
            return std::sqrt(2.0) * h(q.a, q.b).real();
        case Param::off_im:
            return std::sqrt(2.0) * h(q.a, q.b).imag();
    }
    return 0.0;
}

void add_coord(ComplexMatrix& h, const Param& q, double coeff) {
    const double r = coeff / std::sqrt(2.0);
    switch (q.kind) {
        case Param::diag:
            h(q.a, q.a) += cplx(coeff, 0.0);
            break;
        case Param::off_re:
            h(q.a, q.b) += cplx(r, 0.0);
            h(q.b, q.a) += cplx(r, 0.0);
            break;
        case Param::off_im:
            h(q.a, q.b) += cplx(0.0, r);
            h(q.b, q.a) += cplx(0.0, -r);
            break;
    }
}

// Solves the symmetric positive definite system h x = g in place;
// escalating diagonal damping covers near-singular Hessians.
std::vector<double> solve_spd(std::vector<std::vector<double>> h, std::vector<double> g) {
    const std::size_t n = g.size();
    double diag_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag_max = std::max(diag_max, std::abs(h[i][i]));
    }
    double damping = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            double d = h[j][j] + damping;
            for (std::size_t k = 0; k < j; ++k) {
                d -= l[j][k] * l[j][k];
            }
            if (!(d > 0.0)) {
                ok = false;
                break;
            }
            l[j][j] = std::sqrt(d);
            for (std::size_t i = j + 1; i < n; ++i) {
                double s = h[i][j];
                for (std::size_t k = 0; k < j; ++k) {
                    s -= l[i][k] * l[j][k];
                }
                l[i][j] = s / l[j][j];
            }
        }
        if (!ok) {
            damping = damping == 0.0 ? 1e-12 * std::max(diag_max, 1.0) : damping * 100.0;
            continue;
        }
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = g[i];
            for (std::size_t k = 0; k < i; ++k) {
                s -= l[i][k] * y[k];
            }
            y[i] = s / l[i][i];
        }
        std::vector<double> x(n, 0.0);
        for (std::size_t ii = n; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) {
                s -= l[k][ii] * x[k];
            }
            x[ii] = s / l[ii][ii];
        }
        return x;
    }
    // Hessian hopeless; fall back to the gradient direction.
    return g;
}

struct BarrierEval {
    bool feasible = false;
    double value = 0.0;  // objective + mu * log-dets
    double objective = 0.0;
};

double objective_of(const GramProblem& p, const std::vector<ComplexMatrix>& blocks) {
    double obj = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        obj += p.priors[i] * blocks[i].trace().real();
    }
    return obj;
}

BarrierEval eval_barrier(const Workspace& w, const std::vector<ComplexMatrix>& blocks,
                         double mu) {
    BarrierEval ev;
    const ComplexMatrix s = assemble_slack(w, blocks);
    const auto ls = detail::try_cholesky(s);
    if (!ls.has_value()) {
        return ev;
    }
    double logdets = detail::log_det_from_cholesky(*ls);
    for (const ComplexMatrix& g : blocks) {
        if (g.rows() == 0) {
            continue;
        }
        const auto lg = detail::try_cholesky(g);
        if (!lg.has_value()) {
            return ev;
        }
        logdets += detail::log_det_from_cholesky(*lg);
    }
    ev.feasible = true;
    ev.objective = objective_of(*w.p, blocks);
    ev.value = ev.objective + mu * logdets;
    return ev;
}

}  // namespace

GammaSolution solve_gram_sdp(const GramProblem& p, const SolverConfig& cfg) {
    const std::size_t m = p.priors.size();
    if (p.block_sizes.size() != m + 1) {
        throw std::invalid_argument("solve_gram_sdp: block/prior count mismatch");
    }
    for (std::size_t i = 1; i <= m; ++i) {
        if (p.block_sizes[i] == 0) {
            throw std::invalid_argument(
                "solve_gram_sdp: empty state block (instance infeasible upstream)");
        }
    }
    for (double eta : p.priors) {
        if (!(eta > 0.0)) {
            throw std::invalid_argument("solve_gram_sdp: priors must be positive");
        }
    }
    const std::size_t n = p.total_dim();
    if (p.xtilde.rows() != n || p.xtilde.cols() != n) {
        throw std::invalid_argument("solve_gram_sdp: gram matrix size mismatch");
    }

    const HermitianEigen xeig = hermitian_eig(p.xtilde);
    const double lambda_min = xeig.values.front();
    const double lambda_max = xeig.values.back();
    const Tolerances default_tol;
    if (lambda_min <= default_tol.rank_cutoff(lambda_max)) {
        throw std::invalid_argument("solve_gram_sdp: gram matrix not positive definite");
    }

    Workspace w = make_workspace(p);
    // Barrier parameter of the constraint set: slack cone plus the
    // per-block cones; mu * nu bounds the objective gap at a center.
    double nu = static_cast<double>(n);
    for (std::size_t i = 1; i <= m; ++i) {
        nu += static_cast<double>(p.block_sizes[i]);
    }

    std::vector<ComplexMatrix> blocks;
    for (std::size_t i = 1; i <= m; ++i) {
        ComplexMatrix g(p.block_sizes[i], p.block_sizes[i]);
        const double eps = 0.1 * lambda_min;
        for (std::size_t a = 0; a < g.rows(); ++a) {
            g(a, a) = cplx(eps, 0.0);
        }
        blocks.push_back(std::move(g));
    }

    GammaSolution sol;
    double mu = cfg.mu_initial;
    double last_obj = objective_of(p, blocks);
    bool converged = false;

    for (std::size_t outer = 0; outer < cfg.max_outer; ++outer) {
        sol.outer_iterations = outer + 1;

        // Newton centering at the current mu.
        for (std::size_t inner = 0; inner < cfg.max_inner; ++inner) {
            const ComplexMatrix s = assemble_slack(w, blocks);
            const HermitianEigen seig = hermitian_eig(s);
            if (seig.values.front() <= 0.0) {
                throw std::runtime_error("solve_gram_sdp: iterate left the cone");
            }
            const ComplexMatrix sinv = inverse_from_eig(seig);

            std::vector<ComplexMatrix> ginv;
            ginv.reserve(m);
            for (const ComplexMatrix& g : blocks) {
                ginv.push_back(inverse_from_eig(hermitian_eig(g)));
            }

            // grad_i = eta_i I - mu (S^-1)_ii + mu Gamma_i^-1
            std::vector<ComplexMatrix> grad;
            grad.reserve(m);
            for (std::size_t i = 1; i <= m; ++i) {
                const std::size_t off = w.offsets[i];
                const std::size_t bn = p.block_sizes[i];
                ComplexMatrix gm(bn, bn);
                for (std::size_t a = 0; a < bn; ++a) {
                    for (std::size_t b = 0; b < bn; ++b) {
                        gm(a, b) = -mu * sinv(off + a, off + b) + mu * ginv[i - 1](a, b);
                    }
                    gm(a, a) += cplx(p.priors[i - 1], 0.0);
                }
                grad.push_back(std::move(gm));
            }

            const std::size_t np = w.params.size();
            std::vector<double> gvec(np, 0.0);
            for (std::size_t t = 0; t < np; ++t) {
                gvec[t] = coord_of(grad[w.params[t].block - 1], w.params[t]);
            }

            // Hessian columns via outer products of S^-1 / Gamma^-1 columns.
            std::vector<std::vector<double>> hess(np, std::vector<double>(np, 0.0));
            for (std::size_t t2 = 0; t2 < np; ++t2) {
                const Param& q2 = w.params[t2];
                const std::size_t ga = w.offsets[q2.block] + q2.a;
                const std::size_t gb = w.offsets[q2.block] + q2.b;
                const ComplexVector su = sinv.column(ga);
                const ComplexVector sv = sinv.column(gb);
                const ComplexMatrix& wg = ginv[q2.block - 1];
                const ComplexVector gu = wg.column(q2.a);
                const ComplexVector gv = wg.column(q2.b);

                auto big_entry = [&](std::size_t r, std::size_t c) -> cplx {
                    // (S^-1 B S^-1)(r, c) for the basis matrix of q2
                    switch (q2.kind) {
                        case Param::diag:
                            return su[r] * std::conj(su[c]);
                        case Param::off_re:
                            return (su[r] * std::conj(sv[c]) + sv[r] * std::conj(su[c])) /
                                   std::sqrt(2.0);
                        case Param::off_im:
                            return cplx(0.0, 1.0) *
                                   (su[r] * std::conj(sv[c]) - sv[r] * std::conj(su[c])) /
                                   std::sqrt(2.0);
                    }
                    return cplx(0.0, 0.0);
                };
                auto gamma_entry = [&](std::size_t r, std::size_t c) -> cplx {
                    switch (q2.kind) {
                        case Param::diag:
                            return gu[r] * std::conj(gu[c]);
                        case Param::off_re:
                            return (gu[r] * std::conj(gv[c]) + gv[r] * std::conj(gu[c])) /
                                   std::sqrt(2.0);
                        case Param::off_im:
                            return cplx(0.0, 1.0) *
                                   (gu[r] * std::conj(gv[c]) - gv[r] * std::conj(gu[c])) /
                                   std::sqrt(2.0);
                    }
                    return cplx(0.0, 0.0);
                };

                for (std::size_t t1 = 0; t1 < np; ++t1) {
                    const Param& q1 = w.params[t1];
                    const std::size_t ra = w.offsets[q1.block] + q1.a;
                    const std::size_t rb = w.offsets[q1.block] + q1.b;
                    cplx e = big_entry(ra, rb);
                    if (q1.block == q2.block) {
                        e += gamma_entry(q1.a, q1.b);
                    }
                    double val = 0.0;
                    switch (q1.kind) {
                        case Param::diag:
                            val = e.real();
                            break;
                        case Param::off_re:
                            val = std::sqrt(2.0) * e.real();
                            break;
                        case Param::off_im:
                            val = std::sqrt(2.0) * e.imag();
                            break;
                    }
                    hess[t1][t2] = mu * val;
                }
            }

            const std::vector<double> dvec = solve_spd(std::move(hess), gvec);
            double decrement = 0.0;
            for (std::size_t t = 0; t < np; ++t) {
                decrement += gvec[t] * dvec[t];
            }
            if (decrement * 0.5 <= 1e-12) {
                break;  // centered
            }

            std::vector<ComplexMatrix> direction;
            direction.reserve(m);
            for (std::size_t i = 1; i <= m; ++i) {
                direction.emplace_back(p.block_sizes[i], p.block_sizes[i]);
            }
            for (std::size_t t = 0; t < np; ++t) {
                add_coord(direction[w.params[t].block - 1], w.params[t], dvec[t]);
            }

            const BarrierEval here = eval_barrier(w, blocks, mu);
            double step = 1.0;
            bool moved = false;
            while (step > 1e-14) {
                std::vector<ComplexMatrix> trial = blocks;
                for (std::size_t i = 0; i < m; ++i) {
                    trial[i] += direction[i] * cplx(step, 0.0);
                }
                const BarrierEval ev = eval_barrier(w, trial, mu);
                if (ev.feasible && ev.value >= here.value + 0.25 * step * decrement) {
                    blocks = std::move(trial);
                    moved = true;
                    break;
                }
                step *= cfg.step_backtrack;
            }
            if (!moved) {
                break;  // numerical floor for this mu
            }
        }

        const double obj = objective_of(p, blocks);
        if (mu * nu < cfg.gap_tol && std::abs(obj - last_obj) < cfg.gap_tol) {
            converged = true;
            last_obj = obj;
            break;
        }
        last_obj = obj;
        mu *= cfg.mu_shrink;
    }

    sol.blocks = blocks;
    for (const ComplexMatrix& g : blocks) {
        sol.gammas.push_back(g.trace().real());
    }
    sol.objective = objective_of(p, blocks);
    const ComplexMatrix s = assemble_slack(w, blocks);
    sol.min_eig_slack = min_eigenvalue(s.hermitized());
    sol.min_eig_gamma = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double me = min_eigenvalue(blocks[i].hermitized());
        sol.min_eig_gamma = i == 0 ? me : std::min(sol.min_eig_gamma, me);
    }
    sol.converged = converged;
    return sol;
}

SolutionCheck check_solution(const GramProblem& p, const GammaSolution& g,
                             const Tolerances& tol) {
    const std::size_t m = p.priors.size();
    if (g.blocks.size() != m || p.block_sizes.size() != m + 1) {
        throw std::invalid_argument("check_solution: block count mismatch");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (g.blocks[i].rows() != p.block_sizes[i + 1] ||
            g.blocks[i].cols() != p.block_sizes[i + 1]) {
            throw std::invalid_argument("check_solution: block size mismatch");
        }
    }
    Workspace w = make_workspace(p);
    SolutionCheck check;
    const ComplexMatrix s = assemble_slack(w, g.blocks);
    check.min_eig_slack = min_eigenvalue(s.hermitized());
    for (std::size_t i = 0; i < m; ++i) {
        const double me =
            g.blocks[i].rows() == 0 ? 0.0 : min_eigenvalue(g.blocks[i].hermitized());
        check.min_eig_gamma = i == 0 ? me : std::min(check.min_eig_gamma, me);
    }
    check.objective = objective_of(p, g.blocks);
    check.feasible = check.min_eig_slack >= -tol.psd && check.min_eig_gamma >= -tol.psd;
    return check;
}

double oracle_grid_search(const GramProblem& p, std::size_t resolution) {
    if (resolution == 0) {
        throw std::invalid_argument("oracle_grid_search: resolution must be positive");
    }
    const std::size_t m = p.priors.size();
    std::vector<std::size_t> free_idx;
    std::vector<double> free_eta;
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t off = p.block_offset(i);
        for (std::size_t a = 0; a < p.block_sizes[i]; ++a) {
            free_idx.push_back(off + a);
            free_eta.push_back(p.priors[i - 1]);
        }
    }
    if (free_idx.size() > 4) {
        throw std::invalid_argument("oracle_grid_search: more than 4 grid dimensions");
    }

    std::vector<double> gamma(free_idx.size(), 0.0);
    double best = 0.0;

    auto recurse = [&](auto&& self, std::size_t level) -> void {
        if (level == free_idx.size()) {
            ComplexMatrix c = p.xtilde;
            double value = 0.0;
            for (std::size_t k = 0; k < free_idx.size(); ++k) {
                c(free_idx[k], free_idx[k]) -= cplx(gamma[k], 0.0);
                value += free_eta[k] * gamma[k];
            }
            if (value > best && min_eigenvalue(c.hermitized()) >= -1e-12) {
                best = value;
            }
            return;
        }
        const double cap = p.xtilde(free_idx[level], free_idx[level]).real();
        for (std::size_t j = 0; j <= resolution; ++j) {
            gamma[level] = cap * static_cast<double>(j) / static_cast<double>(resolution);
            self(self, level + 1);
        }
    };
    recurse(recurse, 0);
    return best;
}

}  // namespace uqsd
