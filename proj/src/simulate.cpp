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

#include "uqsd/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "uqsd/rng.hpp"

namespace uqsd {

SimReport run_simulation(const DiscriminationInstance& instance, const POVM& p,
                         std::size_t trials, std::uint64_t seed) {
    const std::size_t m = instance.num_states();
    if (trials < 1) {
        throw std::invalid_argument("run_simulation: need at least one trial");
    }
    if (p.num_outcomes() != m + 1) {
        throw std::invalid_argument("run_simulation: outcome count mismatch");
    }
    if (p.completeness_residual() > 1e-8) {
        throw std::invalid_argument("run_simulation: POVM not complete within 1e-8");
    }

    // Outcome distributions per prepared state, fixed for the whole run.
    std::vector<std::vector<double>> prob(m, std::vector<double>(m + 1, 0.0));
    SimReport report;
    report.trials = trials;
    report.seed = seed;
    report.counts.assign(m, std::vector<std::uint64_t>(m + 1, 0));
    report.predicted_success = 0.0;

    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            double q = (p.operators[k] * instance.entries[i].state.matrix).trace().real();
            if (q < 0.0) {
                q = 0.0;
            }
            prob[i][k] = q;
            sum += q;
        }
        if (std::abs(sum - 1.0) > 1e-8) {
            throw std::invalid_argument(
                "run_simulation: outcome probabilities do not sum to 1");
        }
        for (double& q : prob[i]) {
            q /= sum;
        }
        report.predicted_success += instance.entries[i].prior * prob[i][i + 1];
    }

    std::vector<double> prior_cum(m, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += instance.entries[i].prior;
        prior_cum[i] = acc;
    }

    SplitMix64 rng(seed);
    std::uint64_t successes = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const double u = rng.uniform();
        std::size_t state = m - 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (u < prior_cum[i]) {
                state = i;
                break;
            }
        }
        const double v = rng.uniform();
        // Any leftover mass from rounding falls to the inconclusive
        // outcome, which can never fake a success or an error.
        std::size_t outcome = 0;
        double cum = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            cum += prob[state][k];
            if (v < cum) {
                outcome = k;
                break;
            }
        }
        report.counts[state][outcome] += 1;
        if (outcome == state + 1) {
            ++successes;
        } else if (outcome >= 1) {
            ++report.misidentifications;
        }
    }
    report.empirical_success =
        static_cast<double>(successes) / static_cast<double>(trials);
    return report;
}

}  // namespace uqsd
