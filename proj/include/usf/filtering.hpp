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
#include <vector>

#include "usf/states.hpp"

namespace usf::filtering {

using linalg::ComplexMatrix;
using states::DensityOperator;

/// Two-outcome measurement: element 0 announces the target state, element 1
/// is the inconclusive/other outcome. Elements are positive with spectrum
/// in [0, 1] and sum to the identity.
struct Povm {
    std::vector<ComplexMatrix> elements;

    int dim() const {
        return elements.empty() ? 0 : static_cast<int>(elements.front().rows());
    }
};

/// Optimal unambiguous filter together with its figures of merit.
///
/// detection_probability is tr[Π₀ρ₀]; false_alarm is tr[Π₀ρ₁] as computed
/// (values within [-1e-12, 1e-10] are floating-point residue of the
/// projector construction and count as zero). union_dim and other_dim are
/// the dimensions of the joint support and of the filtered-out support.
struct FilterResult {
    Povm povm;
    double detection_probability = 0.0;
    double false_alarm = 0.0;
    int union_dim = 0;
    int other_dim = 0;
};

/// Builds the maximum-detection-probability measurement that never reports
/// rho1 as rho0: Π₁ projects onto the support of ρ₁ and Π₀ is its
/// complement. P = 1 - tr[Π₁ρ₀]; P = 0 exactly when supp ρ₀ ⊆ supp ρ₁ and
/// P = 1 exactly when the supports are orthogonal.
FilterResult optimal_filter(const DensityOperator& rho0,
                            const DensityOperator& rho1,
                            double rel_tol = linalg::kDefaultRankRelTol);

/// Filter against several alternatives at once: Π₁ projects onto the union
/// of the supports of all `others`.
FilterResult optimal_multifilter(const DensityOperator& rho0,
                                 const std::vector<DensityOperator>& others,
                                 double rel_tol = linalg::kDefaultRankRelTol);

/// tr[element₀ · ρ].
double false_alarm(const Povm& povm, const DensityOperator& rho);

struct PovmDiagnostics {
    double completeness_residual = 0.0;
    std::vector<double> min_eigenvalue;
    std::vector<double> max_eigenvalue;
    bool pass = false;
};

/// Completeness and positivity report; diagnostic only, never throws.
PovmDiagnostics validate_povm(const Povm& povm, double tol = 1e-10);

/// Samples measurement outcomes by inverse CDF over the outcome
/// probabilities tr[Π_k ρ]. Probabilities at or below 1e-10 are clamped to
/// exactly zero; any residual up to 1e-9 goes to the inconclusive outcome.
/// Deterministic for a given seed.
std::vector<std::int64_t> simulate_outcomes(const Povm& povm,
                                            const DensityOperator& rho,
                                            std::int64_t trials,
                                            std::uint64_t seed);

}  // namespace usf::filtering
