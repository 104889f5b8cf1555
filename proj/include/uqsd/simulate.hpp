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

#ifndef UQSD_SIMULATE_HPP
#define UQSD_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "uqsd/discriminate.hpp"
#include "uqsd/model.hpp"

namespace uqsd {

/// Monte Carlo tally: counts[i][k] = trials that prepared state i and
/// observed outcome k (k = 0 inconclusive). Success means k = i + 1.
struct SimReport {
    std::size_t trials = 0;
    std::vector<std::vector<std::uint64_t>> counts;
    double empirical_success = 0.0;
    std::uint64_t misidentifications = 0;
    double predicted_success = 0.0;
    std::uint64_t seed = 0;
};

/// Draws a state by prior and an outcome by Born probability per trial
/// (cumulative-sum inversion in index order). Deterministic per seed.
SimReport run_simulation(const DiscriminationInstance& instance, const POVM& p,
                         std::size_t trials, std::uint64_t seed);

}  // namespace uqsd

#endif  // UQSD_SIMULATE_HPP
