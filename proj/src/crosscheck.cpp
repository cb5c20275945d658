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

#include "usf/crosscheck.hpp"

#include <cmath>
#include <random>

namespace usf::crosscheck {

namespace {

using channels::KrausSet;
using channels::LossChannel;
using states::DensityOperator;

ComplexVector random_pure_state(int dim, std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = linalg::Complex(gauss(engine), gauss(engine));
    }
    v /= v.norm();
    return v;
}

SchmidtVector random_schmidt_vector(int dim, std::mt19937_64& engine) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> lambdas(dim);
    double total = 0.0;
    for (double& l : lambdas) {
        l = uni(engine) + 1e-6;
        total += l;
    }
    for (double& l : lambdas) l /= total;
    return SchmidtVector::from(std::move(lambdas), 1e-9);
}

const std::vector<double>& loss_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = 0; i < 10; ++i) g.push_back(0.05 + 0.1 * i);
        return g;
    }();
    return grid;
}

}  // namespace

double numeric_p_depol(const ComplexVector& probe, double p, double rel_tol) {
    const int n = static_cast<int>(probe.size());
    DensityOperator rho1 =
        DensityOperator::from_matrix(probe * probe.adjoint());
    DensityOperator rho0 =
        channels::depolarize(rho1, channels::DepolarizingChannel::make(n, p));
    return filtering::optimal_filter(rho0, rho1, rel_tol).detection_probability;
}

double numeric_p_depol_entangled(const SchmidtVector& lambdas, double p,
                                 double rel_tol) {
    const int n = lambdas.size();
    PureState psi = states::schmidt_entangled_qudit(lambdas, n);
    DensityOperator rho1 = psi.to_density();
    KrausSet kraus = channels::depolarizing_kraus(n, p);
    DensityOperator rho0 =
        channels::apply_on_subsystem(kraus, rho1, 0, {n, n});
    return filtering::optimal_filter(rho0, rho1, rel_tol).detection_probability;
}

double numeric_p_loss_single_mode(const PureState& probe, double r,
                                  double rel_tol) {
    const int d = probe.dim();
    KrausSet kraus = channels::loss_kraus(LossChannel::from_loss(r), d);
    DensityOperator rho1 = probe.to_density();
    DensityOperator rho0 = channels::apply_channel(kraus, rho1);
    return filtering::optimal_filter(rho0, rho1, rel_tol).detection_probability;
}

double numeric_p_loss_tmsv(double n_mean, double r, double trunc_bound) {
    PureState psi = states::tmsv_state(n_mean, trunc_bound);
    const int d = psi.mode_dims[0];
    KrausSet kraus = channels::loss_kraus(LossChannel::from_loss(r), d);
    const auto branches =
        channels::kraus_branches_on_subsystem(kraus, psi.amplitudes, 0, {d, d});
    double kept = 0.0;
    for (const auto& b : branches) {
        kept += std::norm(psi.amplitudes.dot(b));
    }
    return 1.0 - kept;
}

double numeric_p_loss_tmsv_photodiff(double n_mean, double r,
                                     double trunc_bound) {
    PureState psi = states::tmsv_state(n_mean, trunc_bound);
    const int d = psi.mode_dims[0];
    KrausSet kraus = channels::loss_kraus(LossChannel::from_loss(r), d);
    const auto branches =
        channels::kraus_branches_on_subsystem(kraus, psi.amplitudes, 0, {d, d});
    double kept = 0.0;
    for (const auto& b : branches) {
        for (int n = 0; n < d; ++n) {
            kept += std::norm(b(n * d + n));
        }
    }
    return 1.0 - kept;
}

double numeric_p_loss_tmsv_dense(double n_mean, double r, int levels_per_mode,
                                 double trunc_bound) {
    PureState psi = states::tmsv_state(n_mean, levels_per_mode, trunc_bound);
    const int d = levels_per_mode;
    KrausSet kraus = channels::loss_kraus(LossChannel::from_loss(r), d);
    DensityOperator rho1 = psi.to_density();
    DensityOperator rho0 = channels::apply_on_subsystem(kraus, rho1, 0, {d, d});
    return filtering::optimal_filter(rho0, rho1).detection_probability;
}

Report run(const GridConfig& config) {
    Report report;
    std::mt19937_64 engine(config.seed);

    const std::vector<double> p_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                        0.6, 0.7, 0.8, 0.9, 1.0};
    const std::vector<double> n_grid = {0.25, 1.0, 4.0};

    {
        BlockReport block{"depolarizing", 0, 0.0, config.tol_exact, false};
        for (int n = 2; n <= 5; ++n) {
            for (int s = 0; s < config.states_per_dim; ++s) {
                const ComplexVector probe = random_pure_state(n, engine);
                for (double p : p_grid) {
                    const double dev = std::abs(numeric_p_depol(probe, p, config.rel_tol) -
                                                sensing::p_depol(n, p));
                    block.max_abs_deviation = std::max(block.max_abs_deviation, dev);
                    ++block.points;
                }
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    {
        BlockReport block{"depolarizing-entangled", 0, 0.0, config.tol_exact,
                          false};
        const std::vector<double> p_sub = {0.0, 0.25, 0.5, 0.75, 1.0};
        for (int n = 2; n <= 4; ++n) {
            std::vector<SchmidtVector> vectors;
            vectors.push_back(SchmidtVector::from(
                std::vector<double>(n, 1.0 / n), 1e-9));  // uniform (maximal)
            for (int s = 1; s < config.states_per_dim; ++s) {
                vectors.push_back(random_schmidt_vector(n, engine));
            }
            for (const auto& lambdas : vectors) {
                for (double p : p_sub) {
                    const double dev =
                        std::abs(numeric_p_depol_entangled(lambdas, p, config.rel_tol) -
                                 sensing::p_depol_entangled(lambdas, p));
                    block.max_abs_deviation = std::max(block.max_abs_deviation, dev);
                    ++block.points;
                }
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    {
        BlockReport block{"loss-coherent", 0, 0.0, config.tol_fock, false};
        for (double n_bar : n_grid) {
            const PureState probe =
                states::coherent_state(std::sqrt(n_bar), config.trunc_bound);
            for (double r : loss_grid()) {
                const double dev =
                    std::abs(numeric_p_loss_single_mode(probe, r, config.rel_tol) -
                             sensing::p_loss_coherent(n_bar, r));
                block.max_abs_deviation = std::max(block.max_abs_deviation, dev);
                ++block.points;
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    {
        BlockReport block{"loss-squeezed", 0, 0.0, config.tol_fock, false};
        const std::vector<double> r_squeeze = {0.25, 0.5, 1.0};
        for (double n_total : n_grid) {
            for (double rs : r_squeeze) {
                const double m_bar = std::sinh(rs) * std::sinh(rs);
                if (m_bar >= n_total) continue;
                const auto budget = states::PowerBudget::split(n_total, m_bar);
                const PureState probe = states::squeezed_coherent_state(
                    std::sqrt(budget.n_bar), rs, config.trunc_bound);
                for (double r : loss_grid()) {
                    const double dev = std::abs(
                        numeric_p_loss_single_mode(probe, r, config.rel_tol) -
                        sensing::p_loss_squeezed(budget, 0.0, 0.0, r));
                    block.max_abs_deviation =
                        std::max(block.max_abs_deviation, dev);
                    ++block.points;
                }
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    {
        BlockReport block{"loss-squeezed-vacuum", 0, 0.0, config.tol_fock,
                          false};
        for (double n_mean : n_grid) {
            const double rs = std::asinh(std::sqrt(n_mean));
            const PureState probe =
                states::squeezed_coherent_state(0.0, rs, config.trunc_bound);
            for (double r : loss_grid()) {
                const double dev =
                    std::abs(numeric_p_loss_single_mode(probe, r, config.rel_tol) -
                             sensing::p_loss_sv(n_mean, r));
                block.max_abs_deviation = std::max(block.max_abs_deviation, dev);
                ++block.points;
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    {
        BlockReport block{"loss-tmsv", 0, 0.0, config.tol_fock, false};
        for (double n_mean : n_grid) {
            for (double r : loss_grid()) {
                const double dev =
                    std::abs(numeric_p_loss_tmsv(n_mean, r, config.trunc_bound) -
                             sensing::p_loss_tmsv(n_mean, r));
                block.max_abs_deviation = std::max(block.max_abs_deviation, dev);
                ++block.points;
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    {
        BlockReport block{"loss-tmsv-photodiff", 0, 0.0, config.tol_fock, false};
        for (double n_mean : n_grid) {
            for (double r : loss_grid()) {
                const double dev = std::abs(
                    numeric_p_loss_tmsv_photodiff(n_mean, r, config.trunc_bound) -
                    sensing::p_loss_tmsv_photodiff(n_mean, r));
                block.max_abs_deviation = std::max(block.max_abs_deviation, dev);
                ++block.points;
            }
        }
        block.pass = block.max_abs_deviation <= block.tolerance;
        report.blocks.push_back(block);
    }

    report.pass = true;
    for (const auto& block : report.blocks) {
        report.pass = report.pass && block.pass;
    }
    return report;
}

}  // namespace usf::crosscheck
