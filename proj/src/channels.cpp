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

#include "usf/channels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace usf::channels {

namespace {

constexpr double kChannelTraceTol = 1e-8;

struct SparseEntry {
    int row;
    int col;
    Complex value;
};

std::vector<SparseEntry> nonzeros(const ComplexMatrix& a) {
    std::vector<SparseEntry> entries;
    for (int j = 0; j < a.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) {
            if (a(i, j) != Complex(0.0, 0.0)) {
                entries.push_back({i, j, a(i, j)});
            }
        }
    }
    return entries;
}

// Exact double binomial via the multiplicative form; n stays small enough
// (Fock truncations) that no overflow is possible.
double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out *= static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return out;
}

void check_kraus_dims(const KrausSet& kraus) {
    if (kraus.operators.empty()) {
        throw std::invalid_argument("kraus set: empty");
    }
    const auto d = kraus.operators.front().rows();
    for (const auto& a : kraus.operators) {
        if (a.rows() != d || a.cols() != d) {
            throw DimensionMismatch("kraus set: operators differ in dimension");
        }
    }
}

}  // namespace

DepolarizingChannel DepolarizingChannel::make(int dim, double p) {
    if (dim < 1) {
        throw std::invalid_argument("depolarizing channel: dim must be positive");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarizing channel: p must lie in [0, 1]");
    }
    return DepolarizingChannel{dim, p};
}

LossChannel LossChannel::from_loss(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("loss channel: R must lie in [0, 1]");
    }
    const double t = 1.0 - r;
    return LossChannel{r, t, t > 0.0 ? -std::log(t)
                                     : std::numeric_limits<double>::infinity()};
}

LossChannel LossChannel::from_transmittance(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("loss channel: T must lie in [0, 1]");
    }
    return LossChannel{1.0 - t, t,
                       t > 0.0 ? -std::log(t)
                               : std::numeric_limits<double>::infinity()};
}

LossChannel LossChannel::from_attenuation(double g) {
    if (!(g >= 0.0)) {
        throw std::invalid_argument("loss channel: g must be nonnegative");
    }
    const double t = std::exp(-g);
    return LossChannel{1.0 - t, t, g};
}

double KrausSet::completeness_deficit() const {
    if (operators.empty()) return 0.0;
    const auto d = operators.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto& a : operators) {
        sum += a.adjoint() * a;
    }
    sum -= ComplexMatrix::Identity(d, d);
    return linalg::max_abs(sum);
}

DensityOperator depolarize(const DensityOperator& rho,
                           const DepolarizingChannel& channel) {
    if (rho.dim() != channel.dim) {
        throw DimensionMismatch("depolarize: state and channel dimensions differ");
    }
    const int n = channel.dim;
    ComplexMatrix out = (1.0 - channel.p) * rho.matrix() +
                        (channel.p / n) * ComplexMatrix::Identity(n, n);
    return DensityOperator::from_matrix(std::move(out), kChannelTraceTol);
}

KrausSet depolarizing_kraus(int dim, double p) {
    DepolarizingChannel channel = DepolarizingChannel::make(dim, p);
    const int n = channel.dim;

    ComplexMatrix shift = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        shift((j + 1) % n, j) = 1.0;
    }
    ComplexMatrix clock = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    }

    KrausSet set;
    set.operators.push_back(std::sqrt(1.0 - p + p / (n * n)) *
                            ComplexMatrix::Identity(n, n));
    const double w = std::sqrt(p) / n;
    if (w > 0.0) {
        ComplexMatrix xj = ComplexMatrix::Identity(n, n);
        for (int j = 0; j < n; ++j) {
            ComplexMatrix op = xj;
            for (int k = 0; k < n; ++k) {
                if (j != 0 || k != 0) {
                    set.operators.push_back(w * op);
                }
                op = op * clock;
            }
            xj = shift * xj;
        }
    }
    return set;
}

KrausSet loss_kraus(const LossChannel& channel, int n_trunc) {
    if (n_trunc <= 0) {
        throw std::invalid_argument("loss_kraus: n_trunc must be positive");
    }
    const double t = channel.transmittance;
    const double r = channel.loss;

    KrausSet set;
    for (int k = 0; k < n_trunc; ++k) {
        ComplexMatrix a = ComplexMatrix::Zero(n_trunc, n_trunc);
        bool any = false;
        for (int n = k; n < n_trunc; ++n) {
            const double w =
                binomial(n, k) * std::pow(t, n - k) * std::pow(r, k);
            if (w > 0.0) {
                a(n - k, n) = std::sqrt(w);
                any = true;
            }
        }
        if (any) {
            set.operators.push_back(std::move(a));
        }
    }
    return set;
}

DensityOperator apply_channel(const KrausSet& kraus, const DensityOperator& rho) {
    check_kraus_dims(kraus);
    const int d = rho.dim();
    if (kraus.dim() != d) {
        throw DimensionMismatch("apply_channel: state and kraus dimensions differ");
    }

    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (const auto& a : kraus.operators) {
        const auto entries = nonzeros(a);
        if (static_cast<long>(entries.size()) * static_cast<long>(entries.size()) >
            static_cast<long>(d) * d * d) {
            out.noalias() += a * rho.matrix() * a.adjoint();
            continue;
        }
        for (const auto& e1 : entries) {
            for (const auto& e2 : entries) {
                out(e1.row, e2.row) +=
                    e1.value * std::conj(e2.value) * rho.matrix()(e1.col, e2.col);
            }
        }
    }
    return DensityOperator::from_matrix(std::move(out), kChannelTraceTol);
}

DensityOperator apply_on_subsystem(const KrausSet& kraus,
                                   const DensityOperator& rho, int subsystem,
                                   std::pair<int, int> dims) {
    check_kraus_dims(kraus);
    const auto [d_a, d_b] = dims;
    if (d_a * d_b != rho.dim()) {
        throw DimensionMismatch("apply_on_subsystem: dims do not match state");
    }
    if (subsystem != 0 && subsystem != 1) {
        throw std::invalid_argument("apply_on_subsystem: subsystem must be 0 or 1");
    }
    if (kraus.dim() != (subsystem == 0 ? d_a : d_b)) {
        throw DimensionMismatch(
            "apply_on_subsystem: kraus dimension does not match subsystem");
    }

    const auto& m = rho.matrix();
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& a : kraus.operators) {
        const auto entries = nonzeros(a);
        for (const auto& e1 : entries) {
            for (const auto& e2 : entries) {
                const Complex w = e1.value * std::conj(e2.value);
                if (subsystem == 0) {
                    out.block(e1.row * d_b, e2.row * d_b, d_b, d_b) +=
                        w * m.block(e1.col * d_b, e2.col * d_b, d_b, d_b);
                } else {
                    for (int x = 0; x < d_a; ++x) {
                        for (int y = 0; y < d_a; ++y) {
                            out(x * d_b + e1.row, y * d_b + e2.row) +=
                                w * m(x * d_b + e1.col, y * d_b + e2.col);
                        }
                    }
                }
            }
        }
    }
    return DensityOperator::from_matrix(std::move(out), kChannelTraceTol);
}

std::vector<ComplexVector> kraus_branches(const KrausSet& kraus,
                                          const ComplexVector& psi) {
    check_kraus_dims(kraus);
    if (kraus.dim() != psi.size()) {
        throw DimensionMismatch("kraus_branches: dimensions differ");
    }
    std::vector<ComplexVector> branches;
    branches.reserve(kraus.operators.size());
    for (const auto& a : kraus.operators) {
        branches.emplace_back(a * psi);
    }
    return branches;
}

std::vector<ComplexVector> kraus_branches_on_subsystem(
    const KrausSet& kraus, const ComplexVector& psi, int subsystem,
    std::pair<int, int> dims) {
    check_kraus_dims(kraus);
    const auto [d_a, d_b] = dims;
    if (static_cast<long>(d_a) * d_b != psi.size()) {
        throw DimensionMismatch("kraus_branches_on_subsystem: dims do not match");
    }
    if (subsystem != 0 && subsystem != 1) {
        throw std::invalid_argument(
            "kraus_branches_on_subsystem: subsystem must be 0 or 1");
    }
    if (kraus.dim() != (subsystem == 0 ? d_a : d_b)) {
        throw DimensionMismatch(
            "kraus_branches_on_subsystem: kraus dimension does not match subsystem");
    }

    std::vector<ComplexVector> branches;
    branches.reserve(kraus.operators.size());
    for (const auto& a : kraus.operators) {
        ComplexVector out = ComplexVector::Zero(psi.size());
        for (const auto& e : nonzeros(a)) {
            if (subsystem == 0) {
                out.segment(e.row * d_b, d_b) += e.value * psi.segment(e.col * d_b, d_b);
            } else {
                for (int x = 0; x < d_a; ++x) {
                    out(x * d_b + e.row) += e.value * psi(x * d_b + e.col);
                }
            }
        }
        branches.push_back(std::move(out));
    }
    return branches;
}

}  // namespace usf::channels
