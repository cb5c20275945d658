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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "usf/crosscheck.hpp"
#include "usf/json_io.hpp"
#include "usf/sensing.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 2;
constexpr int kExitInput = 3;

constexpr const char* kInsufficient = "insufficient";

struct RunConfig {
    double pac = 0.5;
    double n_min_grid = 0.1;
    double n_max_grid = 1000.0;
    int points = 60;
    double trunc_bound = 1e-12;
    double rel_tol = 1e-10;
    std::uint64_t seed = 20260809;
    std::int64_t simulate = 0;
    std::string out;
};

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::vector<double> log_grid(const RunConfig& cfg) {
    if (cfg.points < 1 || !(cfg.n_min_grid > 0.0) ||
        !(cfg.n_max_grid >= cfg.n_min_grid)) {
        throw usf::ParseError("grid: need 0 < nmin <= nmax and points >= 1");
    }
    std::vector<double> grid(cfg.points);
    if (cfg.points == 1) {
        grid[0] = cfg.n_min_grid;
        return grid;
    }
    const double lg0 = std::log10(cfg.n_min_grid);
    const double lg1 = std::log10(cfg.n_max_grid);
    for (int i = 0; i < cfg.points; ++i) {
        grid[i] = std::pow(10.0, lg0 + (lg1 - lg0) * i / (cfg.points - 1));
    }
    return grid;
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
        throw usf::ParseError("cannot open output file: " + cfg.out);
    }
    out << text;
}

// r_min as a CSV cell; the power threshold shows up as a sentinel.
std::string r_min_cell(const usf::sensing::ProbeSpec& probe,
                       usf::sensing::AcceptanceProbability pac) {
    try {
        return fmt(usf::sensing::r_min(probe, pac).r_min);
    } catch (const usf::InsufficientPower&) {
        return kInsufficient;
    }
}

int cmd_fig1(const RunConfig& cfg) {
    using namespace usf::sensing;
    const auto pac = AcceptanceProbability::of(cfg.pac);
    const std::vector<double> ratios = {0.0, 0.2, 0.9, 1.0};

    std::ostringstream csv;
    csv << "n_total,ratio,R_M\n";
    for (double ratio : ratios) {
        for (double n : log_grid(cfg)) {
            const auto probe =
                ProbeSpec::squeezed(usf::states::PowerBudget::split(n, ratio * n));
            csv << fmt(n) << ',' << fmt(ratio) << ',' << r_min_cell(probe, pac)
                << '\n';
        }
    }
    write_output(cfg, csv.str());
    return kExitOk;
}

int cmd_fig2(const RunConfig& cfg) {
    using namespace usf::sensing;
    const auto pac = AcceptanceProbability::of(cfg.pac);

    std::ostringstream csv;
    csv << "n_total,m_bar_opt_ratio,R_M_opt,R_M_opt_over_R_M_sv\n";
    for (double n : log_grid(cfg)) {
        csv << fmt(n) << ',';
        try {
            const PowerSplitResult opt = optimize_power_split(n, pac);
            csv << fmt(opt.m_bar_opt / n) << ',' << fmt(opt.r_m_opt) << ',';
            try {
                const double r_sv =
                    r_min(ProbeSpec::squeezed_vacuum(n), pac).r_min;
                csv << fmt(opt.r_m_opt / r_sv);
            } catch (const usf::InsufficientPower&) {
                csv << kInsufficient;
            }
        } catch (const usf::InsufficientPower&) {
            csv << kInsufficient << ',' << kInsufficient << ',' << kInsufficient;
        }
        csv << '\n';
    }
    write_output(cfg, csv.str());
    return kExitOk;
}

int cmd_fig3(const RunConfig& cfg) {
    using namespace usf::sensing;
    const auto pac = AcceptanceProbability::of(cfg.pac);

    std::ostringstream csv;
    csv << "n_total,coherent,sq_opt,sv,tmsv_opt,tmsv_photodiff\n";
    for (double n : log_grid(cfg)) {
        csv << fmt(n) << ',' << r_min_cell(ProbeSpec::coherent(n), pac) << ',';
        try {
            csv << fmt(optimize_power_split(n, pac).r_m_opt);
        } catch (const usf::InsufficientPower&) {
            csv << kInsufficient;
        }
        csv << ',' << r_min_cell(ProbeSpec::squeezed_vacuum(n), pac) << ','
            << r_min_cell(ProbeSpec::tmsv(n), pac) << ','
            << r_min_cell(ProbeSpec::tmsv_photodiff(n), pac) << '\n';
    }
    write_output(cfg, csv.str());
    return kExitOk;
}

int cmd_crosscheck(const RunConfig& cfg) {
    usf::crosscheck::GridConfig grid;
    grid.trunc_bound = cfg.trunc_bound;
    grid.rel_tol = cfg.rel_tol;
    grid.seed = cfg.seed;

    const usf::crosscheck::Report report = usf::crosscheck::run(grid);
    std::ostringstream text;
    for (const auto& block : report.blocks) {
        text << block.name << ": points=" << block.points << " max|dev|="
             << fmt(block.max_abs_deviation) << " tol=" << fmt(block.tolerance)
             << (block.pass ? " PASS" : " FAIL") << '\n';
    }
    text << "crosscheck: " << (report.pass ? "PASS" : "FAIL") << '\n';
    write_output(cfg, text.str());
    if (!report.pass) {
        throw usf::ToleranceExceeded("crosscheck: max deviation above tolerance");
    }
    return kExitOk;
}

nlohmann::json parse_channel_arg(const std::string& arg) {
    try {
        if (!arg.empty() && arg.front() == '{') {
            return nlohmann::json::parse(arg);
        }
        std::ifstream in(arg);
        if (!in) {
            throw usf::ParseError("cannot open channel spec file: " + arg);
        }
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw usf::ParseError("channel spec: " + std::string(e.what()));
    }
}

int cmd_filter(const RunConfig& cfg, const std::vector<std::string>& files,
               const std::string& channel_arg) {
    usf::states::DensityOperator rho0 =
        usf::states::DensityOperator::from_matrix(
            usf::linalg::ComplexMatrix::Identity(1, 1));
    std::vector<usf::states::DensityOperator> others;
    if (!channel_arg.empty()) {
        // One unperturbed state; the hypothesis to detect is its image
        // under the channel.
        if (files.size() != 1) {
            throw usf::ParseError(
                "filter: --channel takes exactly one state file");
        }
        const auto rho1 = usf::io::load_density_file(files[0]);
        rho0 = usf::io::apply_channel_spec(parse_channel_arg(channel_arg), rho1);
        others.push_back(rho1);
    } else {
        if (files.size() < 2) {
            throw usf::ParseError(
                "filter: need a target state file and at least one state to "
                "filter out (or --channel with one file)");
        }
        rho0 = usf::io::load_density_file(files[0]);
        for (std::size_t i = 1; i < files.size(); ++i) {
            others.push_back(usf::io::load_density_file(files[i]));
        }
    }

    const usf::filtering::FilterResult result =
        usf::filtering::optimal_multifilter(rho0, others, cfg.rel_tol);
    nlohmann::json j = usf::io::filter_result_to_json(result);
    if (cfg.simulate > 0) {
        const auto counts = usf::filtering::simulate_outcomes(
            result.povm, rho0, cfg.simulate, cfg.seed);
        j["outcomes"] = {{"trials", cfg.simulate},
                         {"seed", cfg.seed},
                         {"counts", counts}};
    }
    write_output(cfg, j.dump(2) + "\n");
    return kExitOk;
}

// Values from a JSON config file fill in flags the command line left at
// their defaults; explicit flags win.
void overlay_config_file(const std::string& path, const CLI::App& app,
                         const CLI::App& filter_cmd, RunConfig& cfg,
                         std::string& channel_arg) {
    std::ifstream in(path);
    if (!in) {
        throw usf::ParseError("cannot open config file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw usf::ParseError(path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw usf::ParseError(path + ": config must be a JSON object");
    }

    const auto want = [&](const CLI::App& owner, const char* flag,
                          const char* key) {
        return j.contains(key) && owner.count(flag) == 0;
    };
    try {
        if (want(app, "--pac", "pac")) cfg.pac = j["pac"].get<double>();
        if (want(app, "--nmin", "nmin")) cfg.n_min_grid = j["nmin"].get<double>();
        if (want(app, "--nmax", "nmax")) cfg.n_max_grid = j["nmax"].get<double>();
        if (want(app, "--points", "points")) cfg.points = j["points"].get<int>();
        if (want(app, "--trunc-bound", "trunc_bound"))
            cfg.trunc_bound = j["trunc_bound"].get<double>();
        if (want(app, "--rel-tol", "rel_tol"))
            cfg.rel_tol = j["rel_tol"].get<double>();
        if (want(app, "--seed", "seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (want(filter_cmd, "--simulate", "simulate"))
            cfg.simulate = j["simulate"].get<std::int64_t>();
        if (want(filter_cmd, "--channel", "channel"))
            channel_arg = j["channel"].dump();
        if (want(app, "--out", "out")) cfg.out = j["out"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw usf::ParseError(path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;
    std::vector<std::string> filter_files;

    CLI::App app{"Optimal unambiguous state filtering and loss/depolarization "
                 "sensing toolkit"};
    app.require_subcommand(1);
    app.add_option("--config", config_path, "JSON config file mirroring flags");
    app.add_option("--pac", cfg.pac, "acceptance probability (0, 1)");
    app.add_option("--nmin", cfg.n_min_grid, "smallest mean photon number");
    app.add_option("--nmax", cfg.n_max_grid, "largest mean photon number");
    app.add_option("--points", cfg.points, "grid points (log spacing)");
    app.add_option("--trunc-bound", cfg.trunc_bound,
                   "Fock truncation norm bound");
    app.add_option("--rel-tol", cfg.rel_tol, "support rank tolerance");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--out", cfg.out, "output path (default stdout)");

    CLI::App* fig1 = app.add_subcommand(
        "fig1", "minimum detectable loss vs power, fixed squeezing fractions");
    CLI::App* fig2 = app.add_subcommand(
        "fig2", "minimum detectable loss with an optimized power split");
    CLI::App* fig3 =
        app.add_subcommand("fig3", "minimum detectable loss per probe strategy");
    CLI::App* crosscheck = app.add_subcommand(
        "crosscheck", "closed forms vs the numeric filtering pipeline");
    CLI::App* filter = app.add_subcommand(
        "filter", "optimal unambiguous filter for states given as JSON files");
    std::string channel_arg;
    filter->add_option("files", filter_files,
                       "target state file, then states to filter out");
    filter->add_option("--simulate", cfg.simulate,
                       "sample this many measurement outcomes on the target");
    filter->add_option(
        "--channel", channel_arg,
        "channel spec (inline JSON or file); the target becomes the channel "
        "output of the single given state");
    for (CLI::App* sub : {fig1, fig2, fig3, crosscheck, filter}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (!config_path.empty()) {
            overlay_config_file(config_path, app, *filter, cfg, channel_arg);
        }
        if (fig1->parsed()) return cmd_fig1(cfg);
        if (fig2->parsed()) return cmd_fig2(cfg);
        if (fig3->parsed()) return cmd_fig3(cfg);
        if (crosscheck->parsed()) return cmd_crosscheck(cfg);
        if (filter->parsed()) return cmd_filter(cfg, filter_files, channel_arg);
    } catch (const usf::ToleranceExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
