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

#include <utility>
#include <vector>

#include "usf/states.hpp"

namespace usf::channels {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using states::DensityOperator;

/// Mixes a state with the maximally mixed state with probability p.
struct DepolarizingChannel {
    int dim = 2;
    double p = 0.0;

    static DepolarizingChannel make(int dim, double p);
};

/// Bosonic linear loss with transmittance T = e^{-g} and loss R = 1 - T.
struct LossChannel {
    double loss = 0.0;           // R
    double transmittance = 1.0;  // T
    double attenuation = 0.0;    // g

    static LossChannel from_loss(double r);
    static LossChannel from_transmittance(double t);
    static LossChannel from_attenuation(double g);
};

/// Operator-sum representation {A_k} with Σ A_k†A_k = I on the kept space.
struct KrausSet {
    std::vector<ComplexMatrix> operators;

    int dim() const {
        return operators.empty() ? 0 : static_cast<int>(operators.front().rows());
    }
    /// max-abs of Σ A_k†A_k - I.
    double completeness_deficit() const;
};

DensityOperator depolarize(const DensityOperator& rho,
                           const DepolarizingChannel& channel);

/// Depolarizing channel in Kraus form, built from the discrete
/// displacement (shift/phase) operator basis.
KrausSet depolarizing_kraus(int dim, double p);

/// Loss channel in Kraus form on a truncated Fock space. A_k removes k
/// photons with binomial weights in T; the set is exactly trace preserving
/// on the kept space (loss never raises the photon number), so truncation
/// error enters only through the input state.
KrausSet loss_kraus(const LossChannel& channel, int n_trunc);

/// Σ A_k ρ A_k†.
DensityOperator apply_channel(const KrausSet& kraus, const DensityOperator& rho);

/// (L ⊗ I) ρ or (I ⊗ L) ρ for a bipartite state with the given factor
/// dimensions; the Kronecker factors are never materialized.
DensityOperator apply_on_subsystem(const KrausSet& kraus,
                                   const DensityOperator& rho, int subsystem,
                                   std::pair<int, int> dims);

/// Unnormalized post-channel branches A_k|ψ⟩ of a pure input. Their dyad
/// sum equals apply_channel on |ψ⟩⟨ψ|; keeping the branches avoids forming
/// large density matrices.
std::vector<ComplexVector> kraus_branches(const KrausSet& kraus,
                                          const ComplexVector& psi);

/// Branches (A_k ⊗ I)|ψ⟩ or (I ⊗ A_k)|ψ⟩ of a bipartite pure input.
std::vector<ComplexVector> kraus_branches_on_subsystem(
    const KrausSet& kraus, const ComplexVector& psi, int subsystem,
    std::pair<int, int> dims);

}  // namespace usf::channels
