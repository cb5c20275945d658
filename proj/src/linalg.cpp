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

#include "usf/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace usf::linalg {

namespace {

// Rotates each column so its largest-magnitude component is real positive.
// Makes eigenvector output deterministic across runs.
void normalize_column_phases(ComplexMatrix& vectors) {
    for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
            double a = std::abs(vectors(r, c));
            if (a > best) {
                best = a;
                pivot = r;
            }
        }
        if (best <= 0.0) continue;
        Complex phase = vectors(pivot, c) / best;
        vectors.col(c) /= phase;
    }
}

Projector projector_from_columns(const ComplexMatrix& vectors, int rank) {
    const auto dim = vectors.rows();
    if (rank == 0) {
        return Projector{ComplexMatrix::Zero(dim, dim), 0};
    }
    ComplexMatrix sel = vectors.leftCols(rank);
    return Projector{sel * sel.adjoint(), rank};
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

SpectralDecomposition eig_hermitian(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) {
        throw DimensionMismatch("eig_hermitian: matrix is not square");
    }
    if (!all_finite(h)) {
        throw NonFinite("eig_hermitian: non-finite entries");
    }
    if (hermiticity_residual(h) > kHermitianTol) {
        throw NotHermitian("eig_hermitian: symmetry residual exceeds tolerance");
    }

    ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    }

    // Eigen returns ascending order; flip to descending.
    const auto n = sym.rows();
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        out.eigenvectors.col(c) = solver.eigenvectors().col(n - 1 - c);
    }
    normalize_column_phases(out.eigenvectors);
    return out;
}

Projector support_projector(const ComplexMatrix& psd, double rel_tol) {
    if (rel_tol <= 0.0 || rel_tol >= 1.0) {
        throw std::invalid_argument("support_projector: rel_tol must lie in (0, 1)");
    }
    SpectralDecomposition eig = eig_hermitian(psd);
    const double lambda_max = eig.eigenvalues.size() > 0 ? eig.eigenvalues(0) : 0.0;
    int rank = 0;
    const double cutoff = rel_tol * lambda_max;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (eig.eigenvalues(i) > cutoff && eig.eigenvalues(i) > 0.0) ++rank;
    }
    return projector_from_columns(eig.eigenvectors, rank);
}

Projector union_projector(const std::vector<Projector>& projectors,
                          double rel_tol) {
    if (projectors.empty()) {
        throw std::invalid_argument("union_projector: empty projector list");
    }
    const auto dim = projectors.front().matrix.rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (const auto& p : projectors) {
        if (p.matrix.rows() != dim || p.matrix.cols() != dim) {
            throw DimensionMismatch("union_projector: projector dimensions differ");
        }
        sum += p.matrix;
    }
    // The sum of projectors is PSD with support equal to the span union.
    return support_projector(sum, rel_tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace usf::linalg
