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

#include "usf/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace usf::states {

namespace {

// Rotate the global phase so the first non-negligible amplitude is real
// positive, then renormalize to unit norm.
void canonicalize(ComplexVector& amps, double captured_norm_sq) {
    amps /= std::sqrt(captured_norm_sq);
    const double scale = amps.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
        const double a = std::abs(amps(i));
        if (a > 1e-12 * scale) {
            amps *= std::conj(amps(i)) / a;
            break;
        }
    }
}

// Exact Fock amplitudes of D(α)S(ζ)|0⟩ up to `count` levels. The state is
// the unique solution of (μ a + ν a†)|ψ⟩ = (μα + να*)|ψ⟩, which gives a
// stable upward recursion; the seed fixes normalization (global phase is
// canonicalized later anyway).
std::vector<Complex> squeezed_coherent_amplitudes(Complex alpha, Complex zeta,
                                                  int count) {
    const double r = std::abs(zeta);
    const double mu = std::cosh(r);
    const Complex nu =
        r > 0.0 ? std::polar(std::sinh(r), std::arg(zeta)) : Complex(0.0, 0.0);

    std::vector<Complex> c(count);
    c[0] = std::exp(-0.5 * std::norm(alpha) -
                    0.5 * (std::conj(nu) / mu) * alpha * alpha) /
           std::sqrt(mu);
    if (count == 1) return c;
    const Complex beta = mu * alpha + nu * std::conj(alpha);
    c[1] = beta * c[0] / mu;
    for (int n = 1; n + 1 < count; ++n) {
        c[n + 1] = (beta * c[n] - nu * std::sqrt(static_cast<double>(n)) * c[n - 1]) /
                   (mu * std::sqrt(static_cast<double>(n + 1)));
    }
    return c;
}

std::vector<Complex> coherent_amplitudes(Complex alpha, int count) {
    std::vector<Complex> c(count);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n + 1 < count; ++n) {
        c[n + 1] = c[n] * alpha / std::sqrt(static_cast<double>(n + 1));
    }
    return c;
}

void check_bound(double bound, const char* what) {
    if (!(bound > 0.0 && bound < 1.0)) {
        throw std::invalid_argument(std::string(what) +
                                    ": truncation bound must lie in (0, 1)");
    }
}

// Truncate an exact single-mode expansion. n_trunc <= 0 requests the
// shortest prefix meeting the bound.
PureState truncate_single_mode(const std::vector<Complex>& exact, int n_trunc,
                               double bound, const char* what) {
    check_bound(bound, what);
    const int count = static_cast<int>(exact.size());
    std::vector<double> captured(count + 1, 0.0);
    long double acc = 0.0L;
    for (int n = 0; n < count; ++n) {
        acc += static_cast<long double>(std::norm(exact[n]));
        captured[n + 1] = static_cast<double>(acc);
    }

    int levels = n_trunc;
    if (n_trunc <= 0) {
        levels = -1;
        for (int n = 1; n <= count; ++n) {
            if (1.0 - captured[n] <= bound) {
                levels = n;
                break;
            }
        }
        if (levels < 0) {
            throw TruncationTooSmall(
                std::string(what) + ": norm bound unreachable within " +
                    std::to_string(kMaxFockLevels) + " levels",
                1.0 - captured[count], bound);
        }
    }

    const double deficit = std::max(0.0, 1.0 - captured[levels]);
    if (deficit > bound) {
        throw TruncationTooSmall(
            std::string(what) + ": truncation deficit exceeds bound", deficit,
            bound);
    }

    PureState out;
    out.mode_dims = {levels};
    out.amplitudes = Eigen::Map<const ComplexVector>(exact.data(), levels);
    out.truncation_deficit = deficit;
    canonicalize(out.amplitudes, captured[levels]);
    return out;
}

}  // namespace

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidState("density operator: matrix must be square and non-empty");
    }
    if (!linalg::all_finite(m)) {
        throw InvalidState("density operator: non-finite entries");
    }
    if (linalg::hermiticity_residual(m) > std::max(tol, 1e-12)) {
        throw InvalidState("density operator: not Hermitian");
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw InvalidState("density operator: trace differs from one by " +
                           std::to_string(tr - 1.0));
    }
    return DensityOperator(std::move(m));
}

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        0.5 * (mat_ + mat_.adjoint()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityOperator::validate(double tol) const {
    if (min_eigenvalue() < -tol) {
        throw InvalidState("density operator: negative eigenvalue below -" +
                           std::to_string(tol));
    }
}

DensityOperator PureState::to_density() const {
    return DensityOperator::from_matrix(amplitudes * amplitudes.adjoint());
}

SchmidtVector SchmidtVector::from(std::vector<double> coefficients, double tol) {
    if (coefficients.empty()) {
        throw InvalidState("Schmidt vector: empty");
    }
    double sum = 0.0;
    for (double c : coefficients) {
        if (!(c >= 0.0)) {
            throw InvalidState("Schmidt vector: negative coefficient");
        }
        sum += c;
    }
    if (std::abs(sum - 1.0) > tol) {
        throw InvalidState("Schmidt vector: coefficients sum to " +
                           std::to_string(sum));
    }
    return SchmidtVector{std::move(coefficients)};
}

PowerBudget PowerBudget::split(double n_total, double m_bar) {
    if (!(n_total >= 0.0) || m_bar < 0.0 || m_bar > n_total) {
        throw std::invalid_argument("power budget: need 0 <= m_bar <= n_total");
    }
    return PowerBudget{n_total, m_bar, n_total - m_bar};
}

PowerBudget PowerBudget::from_parts(double n_bar, double m_bar) {
    if (!(n_bar >= 0.0) || !(m_bar >= 0.0)) {
        throw std::invalid_argument("power budget: parts must be nonnegative");
    }
    return PowerBudget{n_bar + m_bar, m_bar, n_bar};
}

PureState coherent_state(Complex alpha, int n_trunc, double bound) {
    if (n_trunc <= 0) {
        throw std::invalid_argument("coherent_state: n_trunc must be positive");
    }
    return truncate_single_mode(coherent_amplitudes(alpha, n_trunc), n_trunc,
                                bound, "coherent_state");
}

PureState coherent_state(Complex alpha, double bound) {
    return truncate_single_mode(coherent_amplitudes(alpha, kMaxFockLevels), 0,
                                bound, "coherent_state");
}

PureState squeezed_coherent_state(Complex alpha, Complex zeta, int n_trunc,
                                  double bound) {
    if (n_trunc <= 0) {
        throw std::invalid_argument(
            "squeezed_coherent_state: n_trunc must be positive");
    }
    return truncate_single_mode(
        squeezed_coherent_amplitudes(alpha, zeta, n_trunc), n_trunc, bound,
        "squeezed_coherent_state");
}

PureState squeezed_coherent_state(Complex alpha, Complex zeta, double bound) {
    return truncate_single_mode(
        squeezed_coherent_amplitudes(alpha, zeta, kMaxFockLevels), 0, bound,
        "squeezed_coherent_state");
}

PureState tmsv_state(double n_mean, int n_trunc, double bound) {
    if (!(n_mean >= 0.0)) {
        throw std::invalid_argument("tmsv_state: n_mean must be nonnegative");
    }
    check_bound(bound, "tmsv_state");
    const double lambda_sq = n_mean / (1.0 + n_mean);
    const double lambda = std::sqrt(lambda_sq);

    int levels = n_trunc;
    if (n_trunc <= 0) {
        // Deficit after d ladder levels is exactly λ^{2d}.
        levels = 1;
        while (levels < kMaxFockLevels &&
               std::pow(lambda_sq, levels) > bound) {
            ++levels;
        }
    }
    const double deficit = lambda_sq > 0.0 ? std::pow(lambda_sq, levels) : 0.0;
    if (deficit > bound) {
        throw TruncationTooSmall("tmsv_state: truncation deficit exceeds bound",
                                 deficit, bound);
    }

    PureState out;
    out.mode_dims = {levels, levels};
    out.amplitudes = ComplexVector::Zero(levels * levels);
    double amp = std::sqrt(1.0 - lambda_sq);
    long double captured = 0.0L;
    for (int n = 0; n < levels; ++n) {
        out.amplitudes(n * levels + n) = amp;
        captured += static_cast<long double>(amp) * amp;
        amp *= lambda;
    }
    out.truncation_deficit = deficit;
    canonicalize(out.amplitudes, static_cast<double>(captured));
    return out;
}

PureState tmsv_state(double n_mean, double bound) {
    return tmsv_state(n_mean, 0, bound);
}

PureState schmidt_entangled_qudit(const SchmidtVector& lambdas, int n) {
    if (lambdas.size() != n) {
        throw DimensionMismatch(
            "schmidt_entangled_qudit: coefficient count differs from dimension");
    }
    PureState out;
    out.mode_dims = {n, n};
    out.amplitudes = ComplexVector::Zero(n * n);
    for (int k = 0; k < n; ++k) {
        out.amplitudes(k * n + k) = std::sqrt(lambdas.coefficients[k]);
    }
    out.truncation_deficit = 0.0;
    canonicalize(out.amplitudes, out.amplitudes.squaredNorm());
    return out;
}

double mean_photon_number(const PureState& state, int mode) {
    if (mode < 0 || mode >= state.modes()) {
        throw std::invalid_argument("mean_photon_number: mode index out of range");
    }
    double total = 0.0;
    if (state.modes() == 1) {
        for (int n = 0; n < state.dim(); ++n) {
            total += n * std::norm(state.amplitudes(n));
        }
        return total;
    }
    const int d_b = state.mode_dims[1];
    for (int idx = 0; idx < state.dim(); ++idx) {
        const int n = mode == 0 ? idx / d_b : idx % d_b;
        total += n * std::norm(state.amplitudes(idx));
    }
    return total;
}

double mean_photon_number(const DensityOperator& rho,
                          const std::vector<int>& mode_dims, int mode) {
    const int total_dim =
        std::accumulate(mode_dims.begin(), mode_dims.end(), 1, std::multiplies<>());
    if (total_dim != rho.dim()) {
        throw DimensionMismatch("mean_photon_number: mode dims do not match state");
    }
    if (mode < 0 || mode >= static_cast<int>(mode_dims.size())) {
        throw std::invalid_argument("mean_photon_number: mode index out of range");
    }
    double total = 0.0;
    for (int idx = 0; idx < rho.dim(); ++idx) {
        int n = idx;
        for (int m = static_cast<int>(mode_dims.size()) - 1; m > mode; --m) {
            n /= mode_dims[m];
        }
        n %= mode_dims[mode];
        total += n * rho.matrix()(idx, idx).real();
    }
    return total;
}

DensityOperator partial_trace(const DensityOperator& rho,
                              std::pair<int, int> dims, int keep) {
    const auto [d_a, d_b] = dims;
    if (d_a * d_b != rho.dim()) {
        throw DimensionMismatch("partial_trace: dims do not match state");
    }
    if (keep != 0 && keep != 1) {
        throw std::invalid_argument("partial_trace: keep must be 0 or 1");
    }
    const auto& m = rho.matrix();
    if (keep == 0) {
        ComplexMatrix out = ComplexMatrix::Zero(d_a, d_a);
        for (int a = 0; a < d_a; ++a) {
            for (int a2 = 0; a2 < d_a; ++a2) {
                Complex sum = 0.0;
                for (int b = 0; b < d_b; ++b) {
                    sum += m(a * d_b + b, a2 * d_b + b);
                }
                out(a, a2) = sum;
            }
        }
        return DensityOperator::from_matrix(std::move(out), 1e-8);
    }
    ComplexMatrix out = ComplexMatrix::Zero(d_b, d_b);
    for (int b = 0; b < d_b; ++b) {
        for (int b2 = 0; b2 < d_b; ++b2) {
            Complex sum = 0.0;
            for (int a = 0; a < d_a; ++a) {
                sum += m(a * d_b + b, a * d_b + b2);
            }
            out(b, b2) = sum;
        }
    }
    return DensityOperator::from_matrix(std::move(out), 1e-8);
}

}  // namespace usf::states
