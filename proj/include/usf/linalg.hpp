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

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "usf/errors.hpp"

namespace usf::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative eigenvalue cutoff used for numerical rank decisions.
inline constexpr double kDefaultRankRelTol = 1e-10;

/// Symmetry tolerance accepted by eig_hermitian (max-abs of H - H†).
inline constexpr double kHermitianTol = 1e-10;

/// Eigensystem of a Hermitian operator, eigenvalues in descending order.
/// Eigenvector columns follow the same order and carry a deterministic
/// global phase (largest-magnitude component real positive).
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Hermitian idempotent matrix together with its rank.
struct Projector {
    ComplexMatrix matrix;
    int rank = 0;

    int dim() const { return static_cast<int>(matrix.rows()); }
};

bool all_finite(const ComplexMatrix& m);

/// Largest absolute entry, zero for empty matrices.
double max_abs(const ComplexMatrix& m);

/// max-abs of A - A†.
double hermiticity_residual(const ComplexMatrix& m);

/// Full eigensystem of a Hermitian matrix.
///
/// Throws NonFinite on NaN/Inf entries and NotHermitian when the symmetry
/// residual exceeds kHermitianTol. The input is symmetrized before solving
/// so the residual below that tolerance does not leak into the result.
SpectralDecomposition eig_hermitian(const ComplexMatrix& h);

/// Projector onto the span of eigenvectors of `psd` with eigenvalue above
/// rel_tol times the largest eigenvalue. Intended for density operators
/// and other positive semidefinite Hermitian inputs.
Projector support_projector(const ComplexMatrix& psd,
                            double rel_tol = kDefaultRankRelTol);

/// Projector onto the union of the column spaces of the given projectors,
/// computed by spectral thresholding of their sum.
Projector union_projector(const std::vector<Projector>& projectors,
                          double rel_tol = kDefaultRankRelTol);

/// Kronecker (tensor) product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace usf::linalg
