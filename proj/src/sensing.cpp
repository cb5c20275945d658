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

#include "usf/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace usf::sensing {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_inv_survival(double p_ac) { return -std::log1p(-p_ac); }

void check_loss_range(double r) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("loss parameter must lie in [0, 1]");
    }
}

// Monotone-increasing P(r) crossing p_ac; bracket [0, 1]. Runs to the
// machine limit of the bracket (at most 200 halvings) so the residual
// |P(r) - p_ac| is slope-limited rather than width-limited.
double bisect_crossing(const std::function<double(double)>& p, double p_ac) {
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (p(mid) < p_ac ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Golden-section minimizer on [lo, hi] for a unimodal objective.
double golden_minimize(const std::function<double(double)>& f, double lo,
                       double hi, double x_tol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > x_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double r_min_feasible_or_inf(const ProbeSpec& probe, AcceptanceProbability p_ac) {
    try {
        return r_min(probe, p_ac).r_min;
    } catch (const InsufficientPower&) {
        return kInf;
    }
}

}  // namespace

AcceptanceProbability AcceptanceProbability::of(double value) {
    if (!(value > 0.0 && value < 1.0)) {
        throw std::invalid_argument(
            "acceptance probability must lie strictly inside (0, 1)");
    }
    return AcceptanceProbability{value};
}

ProbeSpec ProbeSpec::coherent(double n_total) {
    if (!(n_total >= 0.0)) throw std::invalid_argument("n_total must be >= 0");
    return ProbeSpec{ProbeKind::kCoherent, n_total, 0.0, 0.0, 0.0};
}

ProbeSpec ProbeSpec::squeezed(const PowerBudget& budget, double theta,
                              double phi) {
    return ProbeSpec{ProbeKind::kSqueezed, budget.n_total, budget.m_bar, theta,
                     phi};
}

ProbeSpec ProbeSpec::squeezed_vacuum(double n_total) {
    if (!(n_total >= 0.0)) throw std::invalid_argument("n_total must be >= 0");
    return ProbeSpec{ProbeKind::kSqueezedVacuum, n_total, n_total, 0.0, 0.0};
}

ProbeSpec ProbeSpec::tmsv(double n_total) {
    if (!(n_total >= 0.0)) throw std::invalid_argument("n_total must be >= 0");
    return ProbeSpec{ProbeKind::kTmsvOptimal, n_total, 0.0, 0.0, 0.0};
}

ProbeSpec ProbeSpec::tmsv_photodiff(double n_total) {
    if (!(n_total >= 0.0)) throw std::invalid_argument("n_total must be >= 0");
    return ProbeSpec{ProbeKind::kTmsvPhotodiff, n_total, 0.0, 0.0, 0.0};
}

PowerBudget ProbeSpec::budget() const {
    return PowerBudget::split(n_total, m_bar);
}

double p_depol(int n, double p) {
    if (n < 2) {
        throw InvalidDimension("p_depol: dimension must be at least 2");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p_depol: p must lie in [0, 1]");
    }
    return static_cast<double>(n - 1) / n * p;
}

double p_depol_entangled(const SchmidtVector& lambdas, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p_depol_entangled: p must lie in [0, 1]");
    }
    const int n = lambdas.size();
    double sum_sq = 0.0;
    for (double l : lambdas.coefficients) sum_sq += l * l;
    return (1.0 - sum_sq / n) * p;
}

double p_loss_coherent(double n_bar, double r) {
    check_loss_range(r);
    if (!(n_bar >= 0.0)) {
        throw std::invalid_argument("p_loss_coherent: n_bar must be >= 0");
    }
    const double s = 1.0 - std::sqrt(1.0 - r);
    return -std::expm1(-s * s * n_bar);
}

double p_loss_squeezed(const PowerBudget& budget, double theta, double phi,
                       double r) {
    check_loss_range(r);
    const double sq_r = std::asinh(std::sqrt(budget.m_bar));
    const double mu = std::cosh(sq_r);
    const double nu_mag = std::sinh(sq_r);
    const double denom = 1.0 + nu_mag * nu_mag * r * (2.0 - r);
    const double s = 1.0 - std::sqrt(1.0 - r);
    // |α|² = n_bar with α = √n̄ e^{iφ} and ν = e^{iθ} sinh r; the phase pair
    // enters only through cos(2φ - θ).
    const double braces =
        budget.n_bar *
        (1.0 + (2.0 - r) * (nu_mag * nu_mag +
                            mu * nu_mag * std::cos(2.0 * phi - theta)));
    return 1.0 - std::exp(-s * s / denom * braces) / std::sqrt(denom);
}

double p_loss_sv(double n_mean, double r) {
    check_loss_range(r);
    if (!(n_mean >= 0.0)) {
        throw std::invalid_argument("p_loss_sv: n_mean must be >= 0");
    }
    return 1.0 - 1.0 / std::sqrt(1.0 + n_mean * r * (2.0 - r));
}

double p_loss_tmsv(double n_mean, double r) {
    check_loss_range(r);
    if (!(n_mean >= 0.0)) {
        throw std::invalid_argument("p_loss_tmsv: n_mean must be >= 0");
    }
    const double lambda_sq = n_mean / (1.0 + n_mean);
    const double ratio =
        (1.0 - lambda_sq) / (1.0 - lambda_sq * std::sqrt(1.0 - r));
    return 1.0 - ratio * ratio;
}

double p_loss_tmsv_photodiff(double n_mean, double r) {
    check_loss_range(r);
    if (!(n_mean >= 0.0)) {
        throw std::invalid_argument("p_loss_tmsv_photodiff: n_mean must be >= 0");
    }
    const double lambda_sq = n_mean / (1.0 + n_mean);
    return 1.0 - (1.0 - lambda_sq) / (1.0 - lambda_sq * (1.0 - r));
}

double detection_probability(const ProbeSpec& probe, double r) {
    switch (probe.kind) {
        case ProbeKind::kCoherent:
            return p_loss_coherent(probe.n_total, r);
        case ProbeKind::kSqueezed:
            return p_loss_squeezed(probe.budget(), probe.theta, probe.phi, r);
        case ProbeKind::kSqueezedVacuum:
            return p_loss_sv(probe.n_total, r);
        case ProbeKind::kTmsvOptimal:
            return p_loss_tmsv(probe.n_total, r);
        case ProbeKind::kTmsvPhotodiff:
            return p_loss_tmsv_photodiff(probe.n_total, r);
    }
    throw std::logic_error("detection_probability: unknown probe kind");
}

SensingResult r_min(const ProbeSpec& probe, AcceptanceProbability p_ac) {
    const double pac = p_ac.value;
    SensingResult result;

    switch (probe.kind) {
        case ProbeKind::kSqueezed: {
            if (probe.m_bar <= 0.0) {
                return r_min(ProbeSpec::coherent(probe.n_total), p_ac);
            }
            if (probe.m_bar >= probe.n_total) {
                return r_min(ProbeSpec::squeezed_vacuum(probe.n_total), p_ac);
            }
            result.n_min =
                n_min_squeezed_ratio(probe.m_bar / probe.n_total, p_ac);
            if (detection_probability(probe, 1.0) < pac) {
                throw InsufficientPower("r_min: squeezed probe below threshold",
                                        result.n_min);
            }
            result.r_min = bisect_crossing(
                [&](double r) { return detection_probability(probe, r); }, pac);
            break;
        }
        case ProbeKind::kCoherent: {
            result.n_min = n_min(ProbeKind::kCoherent, p_ac);
            if (probe.n_total < result.n_min) {
                throw InsufficientPower("r_min: coherent probe below threshold",
                                        result.n_min);
            }
            const double s = std::sqrt(log_inv_survival(pac) / probe.n_total);
            result.r_min = s * (2.0 - s);
            break;
        }
        case ProbeKind::kSqueezedVacuum: {
            result.n_min = n_min(ProbeKind::kSqueezedVacuum, p_ac);
            if (probe.n_total < result.n_min) {
                throw InsufficientPower(
                    "r_min: squeezed-vacuum probe below threshold", result.n_min);
            }
            const double c = result.n_min / probe.n_total;
            result.r_min = 1.0 - std::sqrt(1.0 - c);
            break;
        }
        case ProbeKind::kTmsvOptimal: {
            result.n_min = n_min(ProbeKind::kTmsvOptimal, p_ac);
            if (probe.n_total < result.n_min) {
                throw InsufficientPower("r_min: TMSV probe below threshold",
                                        result.n_min);
            }
            const double u = result.n_min / probe.n_total;
            result.r_min = u * (2.0 - u);
            break;
        }
        case ProbeKind::kTmsvPhotodiff: {
            result.n_min = n_min(ProbeKind::kTmsvPhotodiff, p_ac);
            if (probe.n_total < result.n_min) {
                throw InsufficientPower(
                    "r_min: photon-difference probe below threshold",
                    result.n_min);
            }
            result.r_min = result.n_min / probe.n_total;
            break;
        }
    }

    result.r_min = std::clamp(result.r_min, 0.0, 1.0);
    result.p_at_r = detection_probability(probe, result.r_min);
    return result;
}

double r_min_bisection(const ProbeSpec& probe, AcceptanceProbability p_ac) {
    if (detection_probability(probe, 1.0) < p_ac.value) {
        throw InsufficientPower("r_min_bisection: probe below threshold",
                                std::numeric_limits<double>::quiet_NaN());
    }
    return bisect_crossing(
        [&](double r) { return detection_probability(probe, r); }, p_ac.value);
}

double n_min(ProbeKind kind, AcceptanceProbability p_ac) {
    const double pac = p_ac.value;
    switch (kind) {
        case ProbeKind::kCoherent:
            return log_inv_survival(pac);
        case ProbeKind::kSqueezedVacuum: {
            const double inv = 1.0 / (1.0 - pac);
            return inv * inv - 1.0;
        }
        case ProbeKind::kTmsvOptimal:
            return 1.0 / std::sqrt(1.0 - pac) - 1.0;
        case ProbeKind::kTmsvPhotodiff:
            return pac / (1.0 - pac);
        case ProbeKind::kSqueezed:
            throw std::invalid_argument(
                "n_min: squeezed probe needs a power split; use "
                "n_min_squeezed_ratio");
    }
    throw std::logic_error("n_min: unknown probe kind");
}

double n_min_squeezed_ratio(double m_ratio, AcceptanceProbability p_ac) {
    if (!(m_ratio >= 0.0 && m_ratio <= 1.0)) {
        throw std::invalid_argument("n_min_squeezed_ratio: ratio outside [0, 1]");
    }
    if (m_ratio <= 0.0) return n_min(ProbeKind::kCoherent, p_ac);
    if (m_ratio >= 1.0) return n_min(ProbeKind::kSqueezedVacuum, p_ac);

    const auto p_full_loss = [&](double n_total) {
        return p_loss_squeezed(
            PowerBudget::split(n_total, m_ratio * n_total), 0.0, 0.0, 1.0);
    };
    // P at full loss grows monotonically with the total power at fixed
    // ratio; bracket between zero power and the sv threshold (the largest
    // of the closed-form thresholds).
    double lo = 0.0;
    double hi = n_min(ProbeKind::kSqueezedVacuum, p_ac);
    while (p_full_loss(hi) < p_ac.value) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (p_full_loss(mid) < p_ac.value ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double approx_r_min_sv_large_n(double n_mean, AcceptanceProbability p_ac) {
    if (!(n_mean > 0.0)) {
        throw std::invalid_argument("approx_r_min_sv_large_n: n_mean must be > 0");
    }
    const double inv = 1.0 / (1.0 - p_ac.value);
    return (inv * inv - 1.0) / (2.0 * n_mean);
}

double approx_r_min_bright_squeezed(double n_bar, double squeeze_r,
                                    AcceptanceProbability p_ac) {
    if (!(n_bar > 0.0)) {
        throw std::invalid_argument(
            "approx_r_min_bright_squeezed: n_bar must be > 0");
    }
    const double s =
        std::sqrt(log_inv_survival(p_ac.value)) / (std::exp(squeeze_r) * std::sqrt(n_bar));
    return s * (2.0 - s);
}

PowerSplitResult optimize_power_split(double n_total,
                                      AcceptanceProbability p_ac) {
    if (!(n_total > 0.0)) {
        throw std::invalid_argument("optimize_power_split: n_total must be > 0");
    }

    const auto objective = [&](double m_bar) {
        return r_min_feasible_or_inf(
            ProbeSpec::squeezed(PowerBudget::split(n_total, m_bar)), p_ac);
    };

    // Coarse scan to locate the unimodal valley; widen once if no split is
    // feasible before concluding the power is insufficient.
    int best = -1;
    double best_val = kInf;
    int points = 64;
    std::vector<double> grid;
    for (int attempt = 0; attempt < 2 && best < 0; ++attempt) {
        grid.resize(points + 1);
        for (int i = 0; i <= points; ++i) {
            grid[i] = n_total * i / points;
        }
        for (int i = 0; i <= points; ++i) {
            const double v = objective(grid[i]);
            if (v < best_val) {
                best_val = v;
                best = i;
            }
        }
        points = 1024;
    }
    if (best < 0) {
        throw InsufficientPower("optimize_power_split: no split reaches p_ac",
                                n_min_optimized_squeezed(p_ac));
    }

    const double lo = grid[std::max(best - 1, 0)];
    const double hi = grid[std::min<int>(best + 1, grid.size() - 1)];
    const double m_opt = golden_minimize(objective, lo, hi, 1e-8 * n_total);
    return PowerSplitResult{m_opt, objective(m_opt)};
}

double n_min_optimized_squeezed(AcceptanceProbability p_ac) {
    const auto feasible = [&](double n_total) {
        // Best P at full loss over the split; unimodal in m_bar.
        const auto neg_p = [&](double m_bar) {
            return -p_loss_squeezed(PowerBudget::split(n_total, m_bar), 0.0,
                                    0.0, 1.0);
        };
        double best = kInf;
        constexpr int kScan = 128;
        int best_i = 0;
        for (int i = 0; i <= kScan; ++i) {
            const double v = neg_p(n_total * i / kScan);
            if (v < best) {
                best = v;
                best_i = i;
            }
        }
        const double lo = n_total * std::max(best_i - 1, 0) / kScan;
        const double hi = n_total * std::min(best_i + 1, kScan) / kScan;
        const double m = golden_minimize(neg_p, lo, hi, 1e-10 * n_total);
        return -std::min(best, neg_p(m)) >= p_ac.value;
    };

    double hi = n_min(ProbeKind::kCoherent, p_ac) * (1.0 + 1e-9);
    double lo = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (feasible(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace usf::sensing
