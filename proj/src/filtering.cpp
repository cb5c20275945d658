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

#include "usf/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace usf::filtering {

namespace {

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    // tr[AB] = Σ_ij A_ij B_ji without forming the product.
    return a.cwiseProduct(b.transpose()).sum().real();
}

FilterResult build_result(const DensityOperator& rho0,
                          const linalg::Projector& other_support,
                          int union_dim) {
    const int d = rho0.dim();
    FilterResult result;
    result.povm.elements.resize(2);
    result.povm.elements[1] = other_support.matrix;
    result.povm.elements[0] =
        ComplexMatrix::Identity(d, d) - other_support.matrix;
    result.detection_probability = std::clamp(
        1.0 - real_trace_product(other_support.matrix, rho0.matrix()), 0.0, 1.0);
    result.union_dim = union_dim;
    result.other_dim = other_support.rank;
    return result;
}

// 53-bit uniform double in [0, 1); fully determined by the engine stream,
// unlike std::uniform_real_distribution.
double canonical_double(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

FilterResult optimal_filter(const DensityOperator& rho0,
                            const DensityOperator& rho1, double rel_tol) {
    return optimal_multifilter(rho0, {rho1}, rel_tol);
}

FilterResult optimal_multifilter(const DensityOperator& rho0,
                                 const std::vector<DensityOperator>& others,
                                 double rel_tol) {
    if (others.empty()) {
        throw EmptyOtherSet("optimal_multifilter: no states to filter out");
    }
    const int d = rho0.dim();
    for (const auto& rho : others) {
        if (rho.dim() != d) {
            throw DimensionMismatch("optimal_multifilter: dimensions differ");
        }
    }

    std::vector<linalg::Projector> supports;
    supports.reserve(others.size() + 1);
    for (const auto& rho : others) {
        supports.push_back(states::support_projector(rho, rel_tol));
    }
    linalg::Projector other_support =
        supports.size() == 1 ? supports.front()
                             : linalg::union_projector(supports, rel_tol);

    supports.push_back(states::support_projector(rho0, rel_tol));
    const int union_dim = linalg::union_projector(supports, rel_tol).rank;

    FilterResult result = build_result(rho0, other_support, union_dim);
    result.false_alarm = false_alarm(result.povm, others.front());
    for (std::size_t j = 1; j < others.size(); ++j) {
        result.false_alarm =
            std::max(result.false_alarm, false_alarm(result.povm, others[j]));
    }
    return result;
}

double false_alarm(const Povm& povm, const DensityOperator& rho) {
    if (povm.elements.empty()) {
        throw InvalidPovm("false_alarm: empty POVM");
    }
    if (povm.dim() != rho.dim()) {
        throw DimensionMismatch("false_alarm: dimensions differ");
    }
    return real_trace_product(povm.elements[0], rho.matrix());
}

PovmDiagnostics validate_povm(const Povm& povm, double tol) {
    PovmDiagnostics diag;
    if (povm.elements.empty()) {
        return diag;
    }
    const int d = povm.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    bool shapes_ok = true;
    for (const auto& e : povm.elements) {
        if (e.rows() != d || e.cols() != d) {
            shapes_ok = false;
            break;
        }
        sum += e;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
            0.5 * (e + e.adjoint()), Eigen::EigenvaluesOnly);
        diag.min_eigenvalue.push_back(solver.eigenvalues().minCoeff());
        diag.max_eigenvalue.push_back(solver.eigenvalues().maxCoeff());
    }
    if (!shapes_ok) {
        return diag;
    }
    diag.completeness_residual =
        linalg::max_abs(sum - ComplexMatrix::Identity(d, d));
    diag.pass = diag.completeness_residual <= tol;
    for (std::size_t i = 0; i < diag.min_eigenvalue.size(); ++i) {
        diag.pass = diag.pass && diag.min_eigenvalue[i] >= -tol &&
                    diag.max_eigenvalue[i] <= 1.0 + tol;
    }
    return diag;
}

std::vector<std::int64_t> simulate_outcomes(const Povm& povm,
                                            const DensityOperator& rho,
                                            std::int64_t trials,
                                            std::uint64_t seed) {
    if (trials < 0) {
        throw std::invalid_argument("simulate_outcomes: negative trial count");
    }
    PovmDiagnostics diag = validate_povm(povm, 1e-8);
    if (!diag.pass) {
        throw InvalidPovm("simulate_outcomes: POVM fails validation");
    }
    if (povm.dim() != rho.dim()) {
        throw DimensionMismatch("simulate_outcomes: dimensions differ");
    }

    std::vector<double> probs;
    probs.reserve(povm.elements.size());
    double total = 0.0;
    for (const auto& e : povm.elements) {
        double p = real_trace_product(e, rho.matrix());
        if (p <= 1e-10) p = 0.0;
        p = std::clamp(p, 0.0, 1.0);
        probs.push_back(p);
        total += p;
    }
    const double residual = 1.0 - total;
    if (std::abs(residual) > 1e-9) {
        throw InvalidPovm("simulate_outcomes: outcome probabilities sum to " +
                          std::to_string(total));
    }
    if (probs.size() > 1) {
        probs[1] = std::max(0.0, probs[1] + residual);
    }

    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());

    std::vector<std::int64_t> counts(probs.size(), 0);
    std::mt19937_64 engine(seed);
    for (std::int64_t t = 0; t < trials; ++t) {
        const double u = canonical_double(engine);
        std::size_t k = 0;
        while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
        ++counts[k];
    }
    return counts;
}

}  // namespace usf::filtering
