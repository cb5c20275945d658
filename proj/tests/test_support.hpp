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
#include <random>
#include <vector>

#include "usf/states.hpp"

namespace usf::testing {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

inline ComplexVector random_pure_state(int dim, std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = Complex(gauss(engine), gauss(engine));
    }
    v /= v.norm();
    return v;
}

inline ComplexMatrix random_hermitian(int dim, std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = Complex(gauss(engine), gauss(engine));
        }
    }
    return 0.5 * (g + g.adjoint());
}

// Random rank-limited mixed state (Ginibre construction).
inline states::DensityOperator random_density(int dim, int rank,
                                              std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, rank);
    for (int j = 0; j < rank; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = Complex(gauss(engine), gauss(engine));
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return states::DensityOperator::from_matrix(std::move(rho));
}

// Thermal (geometric photon-number) state on a truncated Fock space,
// renormalized over the kept levels.
inline states::DensityOperator thermal_state(double n_mean, int levels) {
    Eigen::VectorXd probs(levels);
    const double ratio = n_mean / (1.0 + n_mean);
    double p = 1.0 / (1.0 + n_mean);
    for (int n = 0; n < levels; ++n) {
        probs(n) = p;
        p *= ratio;
    }
    probs /= probs.sum();
    ComplexMatrix rho = probs.cast<Complex>().asDiagonal();
    return states::DensityOperator::from_matrix(std::move(rho));
}

inline ComplexVector basis_state(int dim, int index) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

inline states::DensityOperator dyad(const ComplexVector& v) {
    return states::DensityOperator::from_matrix(v * v.adjoint());
}

}  // namespace usf::testing
