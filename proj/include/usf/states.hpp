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

#include <complex>
#include <vector>

#include "usf/linalg.hpp"

namespace usf::states {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

/// Norm a truncated Fock expansion must capture before renormalization.
inline constexpr double kDefaultTruncationBound = 1e-12;

/// Hard cap on Fock levels per mode for the auto-truncation policy. Sized
/// for squeezing r ≤ ~1.45 at the default bound; heavier squeezing raises
/// TruncationTooSmall.
inline constexpr int kMaxFockLevels = 256;

/// Trace-one positive-semidefinite operator on a finite Hilbert space.
///
/// Hermiticity and unit trace are checked at construction; the spectrum
/// check is the more expensive validate().
class DensityOperator {
  public:
    static DensityOperator from_matrix(ComplexMatrix m, double tol = 1e-10);

    const ComplexMatrix& matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    double trace_real() const { return mat_.trace().real(); }
    double min_eigenvalue() const;

    /// Full invariant check including positivity. Throws InvalidState.
    void validate(double tol = 1e-10) const;

  private:
    explicit DensityOperator(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

/// Normalized state vector over one or two Fock/qudit modes.
struct PureState {
    std::vector<int> mode_dims;
    ComplexVector amplitudes;
    /// Norm lost to truncation before renormalization.
    double truncation_deficit = 0.0;

    int dim() const { return static_cast<int>(amplitudes.size()); }
    int modes() const { return static_cast<int>(mode_dims.size()); }

    DensityOperator to_density() const;
};

/// Nonnegative coefficients summing to one.
struct SchmidtVector {
    std::vector<double> coefficients;

    static SchmidtVector from(std::vector<double> coefficients, double tol = 1e-12);
    int size() const { return static_cast<int>(coefficients.size()); }
};

/// Mean-photon budget split between coherent amplitude and squeezing,
/// n_total = n_bar + m_bar.
struct PowerBudget {
    double n_total = 0.0;
    double m_bar = 0.0;
    double n_bar = 0.0;

    static PowerBudget split(double n_total, double m_bar);
    static PowerBudget from_parts(double n_bar, double m_bar);
};

/// Coherent state with amplitudes ∝ e^{-|α|²/2} αⁿ/√n!.
/// Throws TruncationTooSmall when n_trunc leaves more than `bound` of the
/// norm outside the kept levels.
PureState coherent_state(Complex alpha, int n_trunc,
                         double bound = kDefaultTruncationBound);
/// Auto-truncating overload; grows levels until the bound is met.
PureState coherent_state(Complex alpha, double bound = kDefaultTruncationBound);

/// Displaced squeezed vacuum, displacement applied after squeezing.
/// zeta = r e^{iθ} is the complex squeezing parameter. The nominal range is
/// r ≤ 2, but at the default truncation bound the level cap accommodates
/// r up to about 1.45; beyond that construction raises TruncationTooSmall.
PureState squeezed_coherent_state(Complex alpha, Complex zeta, int n_trunc,
                                  double bound = kDefaultTruncationBound);
PureState squeezed_coherent_state(Complex alpha, Complex zeta,
                                  double bound = kDefaultTruncationBound);

/// Two-mode squeezed vacuum with the given per-arm mean photon number.
/// Amplitude ladder is geometric with λ² = n_mean/(1+n_mean).
PureState tmsv_state(double n_mean, int n_trunc,
                     double bound = kDefaultTruncationBound);
PureState tmsv_state(double n_mean, double bound = kDefaultTruncationBound);

/// Bipartite qudit state Σ √λk |k⟩⊗|k⟩ on dimension n².
PureState schmidt_entangled_qudit(const SchmidtVector& lambdas, int n);

/// tr[ρ n̂_mode] for Fock-space states.
double mean_photon_number(const PureState& state, int mode = 0);
double mean_photon_number(const DensityOperator& rho,
                          const std::vector<int>& mode_dims, int mode = 0);

/// Support projector of a density operator (span of eigenvectors with
/// eigenvalue above rel_tol times the largest).
inline linalg::Projector support_projector(
    const DensityOperator& rho, double rel_tol = linalg::kDefaultRankRelTol) {
    return linalg::support_projector(rho.matrix(), rel_tol);
}

/// Reduced state of one subsystem of a bipartite density operator.
DensityOperator partial_trace(const DensityOperator& rho,
                              std::pair<int, int> dims, int keep);

}  // namespace usf::states
