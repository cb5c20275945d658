// Copyright 2026 The usf Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "usf/channels.hpp"
#include "usf/filtering.hpp"
#include "usf/sensing.hpp"

namespace usf::crosscheck {

using linalg::ComplexVector;
using states::PureState;
using states::SchmidtVector;

/// Detection probability of depolarization computed end to end: depolarize
/// the pure probe, then build the optimal filter against the unperturbed
/// state and read off its detection probability.
double numeric_p_depol(const ComplexVector& probe, double p,
                       double rel_tol = linalg::kDefaultRankRelTol);

/// Entangled variant: the depolarizing Kraus set acts on one arm of the
/// Schmidt state.
double numeric_p_depol_entangled(const SchmidtVector& lambdas, double p,
                                 double rel_tol = linalg::kDefaultRankRelTol);

/// Loss sensing for a single-mode pure probe through the dense pipeline
/// (Kraus application on the density operator, then the optimal filter).
double numeric_p_loss_single_mode(const PureState& probe, double r,
                                  double rel_tol = linalg::kDefaultRankRelTol);

/// Loss on one arm of the TMSV probe. Works on pure-state branches so the
/// two-mode density operator is never materialized; probabilities match
/// the optimal-filter route on the dyad.
double numeric_p_loss_tmsv(double n_mean, double r,
                           double trunc_bound = states::kDefaultTruncationBound);

/// Same channel, but detection by the photon-number-difference projector
/// Σ|n,n⟩⟨n,n| instead of the optimal measurement.
double numeric_p_loss_tmsv_photodiff(
    double n_mean, double r,
    double trunc_bound = states::kDefaultTruncationBound);

/// Dense route for the TMSV check at small truncation: (L ⊗ I) applied to
/// the density operator and the full optimal filter on two modes.
double numeric_p_loss_tmsv_dense(double n_mean, double r, int levels_per_mode,
                                 double trunc_bound);

struct BlockReport {
    std::string name;
    int points = 0;
    double max_abs_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::vector<BlockReport> blocks;
    bool pass = false;
};

struct GridConfig {
    double trunc_bound = states::kDefaultTruncationBound;
    double rel_tol = linalg::kDefaultRankRelTol;
    std::uint64_t seed = 20260809;
    int states_per_dim = 5;
    double tol_exact = 1e-12;  // finite-dimensional blocks
    double tol_fock = 1e-6;    // truncation-limited blocks
};

/// Runs every closed-form-vs-pipeline comparison block and reports the
/// worst deviation per block.
Report run(const GridConfig& config);

}  // namespace usf::crosscheck
