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

#include <optional>

#include "usf/states.hpp"

namespace usf::sensing {

using states::PowerBudget;
using states::SchmidtVector;

/// Detection probability a loss must reach to count as detected.
/// Strictly interior to (0, 1).
struct AcceptanceProbability {
    double value;

    static AcceptanceProbability of(double value);
};

enum class ProbeKind {
    kCoherent,
    kSqueezed,        // fixed power split, amplitude squeezing
    kSqueezedVacuum,
    kTmsvOptimal,     // two-mode squeezed vacuum, optimal measurement
    kTmsvPhotodiff,   // two-mode squeezed vacuum, photon-number difference
};

/// Probe configuration for threshold computations. n_total is the mean
/// photon number incident on the tested channel.
struct ProbeSpec {
    ProbeKind kind = ProbeKind::kCoherent;
    double n_total = 0.0;
    double m_bar = 0.0;  // squeezing share, kSqueezed only
    double theta = 0.0;  // squeezing phase
    double phi = 0.0;    // coherent-amplitude phase

    static ProbeSpec coherent(double n_total);
    static ProbeSpec squeezed(const PowerBudget& budget, double theta = 0.0,
                              double phi = 0.0);
    static ProbeSpec squeezed_vacuum(double n_total);
    static ProbeSpec tmsv(double n_total);
    static ProbeSpec tmsv_photodiff(double n_total);

    PowerBudget budget() const;
};

struct SensingResult {
    double r_min = 1.0;                 // minimum detectable loss
    double n_min = 0.0;                 // power threshold for this probe
    std::optional<double> p_at_r;       // detection probability at r_min
};

/// Detection probability of depolarization in dimension n, (n-1)p/n;
/// independent of the pure probe state.
double p_depol(int n, double p);

/// Entangled-probe version, (1 - Σλ²/n)p; maximal for the uniform
/// Schmidt vector and equal to p_depol when a single λ is one.
double p_depol_entangled(const SchmidtVector& lambdas, double p);

double p_loss_coherent(double n_bar, double r);

/// General-phase squeezed probe. Maximal over phases when 2φ - θ = 0.
double p_loss_squeezed(const PowerBudget& budget, double theta, double phi,
                       double r);

double p_loss_sv(double n_mean, double r);
double p_loss_tmsv(double n_mean, double r);

/// Photon-number-difference measurement on the TMSV probe; never exceeds
/// p_loss_tmsv.
double p_loss_tmsv_photodiff(double n_mean, double r);

/// Detection probability of the given probe at loss r.
double detection_probability(const ProbeSpec& probe, double r);

/// Smallest loss whose detection probability reaches p_ac. Closed form
/// where one exists, bisection otherwise. Throws InsufficientPower
/// (carrying the power threshold) when the probe cannot reach p_ac even at
/// full loss.
SensingResult r_min(const ProbeSpec& probe, AcceptanceProbability p_ac);

/// Bisection route for the same quantity, usable as an independent check
/// against the closed forms.
double r_min_bisection(const ProbeSpec& probe, AcceptanceProbability p_ac);

/// Power threshold below which no loss is detectable at p_ac.
double n_min(ProbeKind kind, AcceptanceProbability p_ac);

/// Same threshold for a squeezed probe at fixed m_bar/n_total ratio,
/// found numerically.
double n_min_squeezed_ratio(double m_ratio, AcceptanceProbability p_ac);

/// Large-power approximation for the squeezed-vacuum probe; relative error
/// below 5% for n_mean >= 100. Scales as 1/n_mean.
double approx_r_min_sv_large_n(double n_mean, AcceptanceProbability p_ac);

/// Bright-probe approximation (n_bar >> m_bar): the coherent threshold
/// improved by e^r. Relative error below 5% for n_bar/m_bar >= 100.
double approx_r_min_bright_squeezed(double n_bar, double squeeze_r,
                                    AcceptanceProbability p_ac);

struct PowerSplitResult {
    double m_bar_opt = 0.0;
    double r_m_opt = 1.0;
};

/// Minimizes r_min over the power split m_bar in [0, n_total] at
/// θ = φ = 0 (coarse scan plus golden-section refinement).
PowerSplitResult optimize_power_split(double n_total,
                                      AcceptanceProbability p_ac);

/// Power threshold of the split-optimized squeezed probe.
double n_min_optimized_squeezed(AcceptanceProbability p_ac);

}  // namespace usf::sensing
