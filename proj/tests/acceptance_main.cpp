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
//
// End-to-end acceptance suite. Each numbered criterion prints one PASS or
// FAIL line with the measured quantity; the process exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "test_support.hpp"
#include "usf/crosscheck.hpp"
#include "usf/json_io.hpp"

namespace fs = std::filesystem;
using namespace usf;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using states::DensityOperator;
using states::PowerBudget;
using states::SchmidtVector;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL",
                criterion, label.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---- criterion 1: depolarizing law ------------------------------------

void criterion_1() {
    std::mt19937_64 engine(13001);
    double max_dev = 0.0;
    for (int n = 2; n <= 5; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const ComplexVector probe = testing::random_pure_state(n, engine);
            for (int ip = 0; ip <= 10; ++ip) {
                const double p = 0.1 * ip;
                const double dev = std::abs(crosscheck::numeric_p_depol(probe, p) -
                                            sensing::p_depol(n, p));
                max_dev = std::max(max_dev, dev);
            }
        }
    }
    report(1, "depolarizing law (n-1)p/n via pipeline", max_dev <= 1e-12,
           "max|dev| = " + fmt(max_dev) + " (tol 1e-12)");
}

// ---- criterion 2: entangled depolarizing -------------------------------

void criterion_2() {
    std::mt19937_64 engine(13002);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double max_dev = 0.0;
    bool uniform_maximal = true;
    for (int n = 2; n <= 4; ++n) {
        const auto uniform =
            SchmidtVector::from(std::vector<double>(n, 1.0 / n), 1e-9);
        std::vector<SchmidtVector> vectors = {uniform};
        for (int rep = 0; rep < 4; ++rep) {
            std::vector<double> lambdas(n);
            double total = 0.0;
            for (double& l : lambdas) {
                l = uni(engine) + 1e-9;
                total += l;
            }
            for (double& l : lambdas) l /= total;
            vectors.push_back(SchmidtVector::from(lambdas, 1e-9));
        }
        for (const auto& lambdas : vectors) {
            for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const double numeric =
                    crosscheck::numeric_p_depol_entangled(lambdas, p);
                const double dev =
                    std::abs(numeric - sensing::p_depol_entangled(lambdas, p));
                max_dev = std::max(max_dev, dev);
                uniform_maximal =
                    uniform_maximal &&
                    numeric <= sensing::p_depol_entangled(uniform, p) + 1e-12;
            }
        }
    }
    report(2, "entangled depolarizing via (L⊗I) pipeline",
           max_dev <= 1e-12 && uniform_maximal,
           "max|dev| = " + fmt(max_dev) + " (tol 1e-12), uniform maximal: " +
               (uniform_maximal ? "yes" : "no"));
}

// ---- criterion 3: loss formulas vs the Fock pipeline -------------------

void criterion_3() {
    const auto start = std::chrono::steady_clock::now();
    crosscheck::GridConfig config;  // bound 1e-12, tolerance 1e-6
    const crosscheck::Report rep = crosscheck::run(config);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    double worst = 0.0;
    bool pass = true;
    std::ostringstream detail;
    for (const auto& block : rep.blocks) {
        if (block.name.rfind("loss", 0) != 0) continue;
        worst = std::max(worst, block.max_abs_deviation);
        pass = pass && block.pass;
        detail << block.name << "=" << fmt(block.max_abs_deviation) << " ";
    }
    pass = pass && elapsed <= 120.0;
    report(3, "loss closed forms vs truncated-Fock pipeline", pass,
           detail.str() + "(tol 1e-6), runtime " + fmt(elapsed) + " s (limit 120)");
}

// ---- criterion 4: minimum powers at P_ac = 1/2 --------------------------

void criterion_4() {
    const auto pac = sensing::AcceptanceProbability::of(0.5);
    using sensing::ProbeKind;

    struct Case {
        ProbeKind kind;
        double expected;
        const char* name;
    };
    const std::vector<Case> cases = {
        {ProbeKind::kCoherent, std::log(2.0), "coherent"},
        {ProbeKind::kSqueezedVacuum, 3.0, "squeezed-vacuum"},
        {ProbeKind::kTmsvOptimal, std::sqrt(2.0) - 1.0, "tmsv"},
        {ProbeKind::kTmsvPhotodiff, 1.0, "photodiff"},
    };

    double worst_closed = 0.0;
    double worst_bisect = 0.0;
    for (const auto& c : cases) {
        const double closed = sensing::n_min(c.kind, pac);
        worst_closed = std::max(worst_closed, std::abs(closed - c.expected));

        // Independent threshold detection: bisect the total power until the
        // full-loss detection probability crosses P_ac.
        const auto probe_at = [&](double n) {
            switch (c.kind) {
                case ProbeKind::kCoherent:
                    return sensing::ProbeSpec::coherent(n);
                case ProbeKind::kSqueezedVacuum:
                    return sensing::ProbeSpec::squeezed_vacuum(n);
                case ProbeKind::kTmsvOptimal:
                    return sensing::ProbeSpec::tmsv(n);
                default:
                    return sensing::ProbeSpec::tmsv_photodiff(n);
            }
        };
        double lo = 0.0;
        double hi = 8.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (sensing::detection_probability(probe_at(mid), 1.0) < pac.value
                 ? lo
                 : hi) = mid;
        }
        worst_bisect = std::max(worst_bisect, std::abs(0.5 * (lo + hi) - closed));
    }
    report(4, "minimum powers ln2 / 3 / √2-1 / 1 at P_ac = 1/2",
           worst_closed <= 1e-12 && worst_bisect <= 1e-9,
           "closed-form dev " + fmt(worst_closed) + ", bisection dev " +
               fmt(worst_bisect) + " (tol 1e-9)");
}

// ---- criterion 5: optimized power split --------------------------------

void criterion_5() {
    const auto pac = sensing::AcceptanceProbability::of(0.5);

    const double threshold = sensing::n_min_optimized_squeezed(pac);
    report(5, "optimized-squeezed power threshold = 0.60 ± 0.01",
           std::abs(threshold - 0.60) <= 0.01,
           "measured " + fmt(threshold));

    const double r_opt = sensing::optimize_power_split(1000.0, pac).r_m_opt;
    const double r_sv =
        sensing::r_min(sensing::ProbeSpec::squeezed_vacuum(1000.0), pac).r_min;
    const double ratio = r_opt / r_sv;
    report(5, "optimized/vacuum threshold ratio = 0.92 ± 0.02 at n = 1e3",
           std::abs(ratio - 0.92) <= 0.02, "measured " + fmt(ratio));
}

// ---- criterion 6: zero false alarm and optimality ----------------------

void criterion_6() {
    std::mt19937_64 engine(13006);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    double worst_fa = 0.0;
    double worst_excess = -1.0;
    for (int pair = 0; pair < 200; ++pair) {
        const int d = 2 + static_cast<int>(engine() % 7);
        const auto rho0 =
            testing::random_density(d, 1 + static_cast<int>(engine() % d), engine);
        const auto rho1 =
            testing::random_density(d, 1 + static_cast<int>(engine() % d), engine);
        const auto result = filtering::optimal_filter(rho0, rho1);
        worst_fa = std::max(worst_fa, result.false_alarm);

        const ComplexMatrix& kernel = result.povm.elements[0];
        for (int probe = 0; probe < 1000; ++probe) {
            ComplexMatrix g(d, d);
            for (int j = 0; j < d; ++j) {
                for (int i = 0; i < d; ++i) {
                    g(i, j) = Complex(gauss(engine), gauss(engine));
                }
            }
            ComplexMatrix m = g * g.adjoint();
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
                m, Eigen::EigenvaluesOnly);
            m *= uni(engine) / solver.eigenvalues().maxCoeff();
            const ComplexMatrix pi = kernel * m * kernel;
            const double p = (pi * rho0.matrix()).trace().real();
            worst_excess =
                std::max(worst_excess, p - result.detection_probability);
        }
    }
    report(6, "zero false alarm and POVM optimality over 200 random pairs",
           worst_fa <= 1e-10 && worst_excess <= 1e-9,
           "max false alarm " + fmt(worst_fa) + " (tol 1e-10), max excess " +
               fmt(worst_excess) + " (tol 1e-9)");
}

// ---- criterion 7: asymptotic approximations ----------------------------

void criterion_7() {
    const auto pac = sensing::AcceptanceProbability::of(0.5);
    double worst = 0.0;
    for (double n : {100.0, 300.0, 1000.0}) {
        const double exact =
            sensing::r_min(sensing::ProbeSpec::squeezed_vacuum(n), pac).r_min;
        const double approx = sensing::approx_r_min_sv_large_n(n, pac);
        worst = std::max(worst, std::abs(approx - exact) / exact);
    }
    double worst_bright = 0.0;
    for (double rs : {0.1, 0.3, 0.5, 1.0}) {
        const double m_bar = std::sinh(rs) * std::sinh(rs);
        for (double ratio : {100.0, 1000.0}) {
            const auto probe = sensing::ProbeSpec::squeezed(
                PowerBudget::from_parts(ratio * m_bar, m_bar));
            const double exact = sensing::r_min_bisection(probe, pac);
            const double approx =
                sensing::approx_r_min_bright_squeezed(ratio * m_bar, rs, pac);
            worst_bright = std::max(worst_bright, std::abs(approx - exact) / exact);
        }
    }
    report(7, "asymptotic approximations within 5%",
           worst <= 0.05 && worst_bright <= 0.05,
           "vacuum rel err " + fmt(worst) + ", bright rel err " +
               fmt(worst_bright));
}

// ---- criterion 8: Monte Carlo statistics --------------------------------

void criterion_8() {
    std::mt19937_64 engine(13008);
    const auto rho1 = testing::random_density(4, 2, engine);
    const auto rho0 = testing::random_density(4, 3, engine);
    const auto result = filtering::optimal_filter(rho0, rho1);
    const double p = result.detection_probability;

    const std::int64_t trials = 100000;
    const auto hits = filtering::simulate_outcomes(result.povm, rho0, trials, 424242);
    const double freq = static_cast<double>(hits[0]) / trials;
    const double sigma = std::sqrt(p * (1.0 - p) / trials);

    const auto nulls = filtering::simulate_outcomes(result.povm, rho1, trials, 424242);

    report(8, "Monte Carlo outcomes match probabilities",
           std::abs(freq - p) <= 3.0 * sigma && nulls[0] == 0,
           "P = " + fmt(p) + ", frequency " + fmt(freq) + " (3σ = " +
               fmt(3.0 * sigma) + "), filtered-state detections " +
               std::to_string(nulls[0]));
}

// ---- criterion 9: CLI determinism ---------------------------------------

int run_cli(const std::string& cli, const std::string& args) {
    const int status = std::system((cli + " " + args).c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_9(const std::string& cli) {
    if (cli.empty()) {
        report(9, "CLI determinism", false,
               "usage: usf_acceptance <path-to-usf-cli>");
        return;
    }
    const fs::path tmp =
        fs::temp_directory_path() / ("usf_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(tmp);

    bool pass = true;
    std::string detail;

    const auto identical = [&](const std::string& args, const char* tag) {
        const fs::path a = tmp / (std::string(tag) + "_a");
        const fs::path b = tmp / (std::string(tag) + "_b");
        const int ra = run_cli(cli, args + " --out " + a.string());
        const int rb = run_cli(cli, args + " --out " + b.string());
        const bool same = ra == 0 && rb == 0 && slurp(a) == slurp(b) &&
                          !slurp(a).empty();
        if (!same) detail += std::string(tag) + " differs; ";
        pass = pass && same;
    };

    identical("fig1 --nmin 0.1 --nmax 1000 --points 25", "fig1");
    identical("fig3 --nmin 0.5 --nmax 200 --points 10", "fig3");
    identical("crosscheck --seed 4242", "crosscheck");

    {
        const auto rho1 = testing::dyad(testing::basis_state(2, 0));
        const auto rho0 = channels::depolarize(
            rho1, channels::DepolarizingChannel::make(2, 0.5));
        std::ofstream(tmp / "r0.json") << io::density_to_json(rho0).dump();
        std::ofstream(tmp / "r1.json") << io::density_to_json(rho1).dump();
        identical("filter " + (tmp / "r0.json").string() + " " +
                      (tmp / "r1.json").string() + " --simulate 50000 --seed 7",
                  "filter");
    }

    std::error_code ec;
    fs::remove_all(tmp, ec);
    report(9, "repeated CLI runs with fixed seeds are byte-identical", pass,
           pass ? "fig1/fig3/crosscheck/filter outputs identical" : detail);
}

}  // namespace

void guarded(int criterion, void (*fn)()) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(criterion, "criterion body threw", false, e.what());
    }
}

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    guarded(1, criterion_1);
    guarded(2, criterion_2);
    guarded(3, criterion_3);
    guarded(4, criterion_4);
    guarded(5, criterion_5);
    guarded(6, criterion_6);
    guarded(7, criterion_7);
    guarded(8, criterion_8);
    try {
        criterion_9(cli);
    } catch (const std::exception& e) {
        report(9, "criterion body threw", false, e.what());
    }

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion check(s) failed\n", g_failures);
    return 1;
}
