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

#ifndef UQSD_TOLERANCES_HPP
#define UQSD_TOLERANCES_HPP

#include <algorithm>

namespace uqsd {

/// Numerical knobs shared across the pipeline. All thresholds positive.
struct Tolerances {
    double rank_abs = 1e-10;   // absolute eigenvalue/singular-value cutoff
    double rank_rel = 1e-9;    // cutoff relative to the largest eigenvalue
    double psd = 1e-9;         // allowed negative-eigenvalue slack
    double intersect = 1e-8;   // allowed 1 - cos^2(theta) in subspace intersections
    double solver_gap = 1e-7;  // target duality gap for the Gram SDP
    double verify = 1e-8;      // residual budget for measurement verification

    // Scale-aware support cutoff: eigenvalues at or below this are "zero".
    double rank_cutoff(double lambda_max) const {
        return std::max(rank_abs, rank_rel * lambda_max);
    }
};

}  // namespace uqsd

#endif  // UQSD_TOLERANCES_HPP
