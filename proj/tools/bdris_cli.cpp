// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/channel.hpp"
#include "bdris/closedform.hpp"
#include "bdris/io.hpp"
#include "bdris/montecarlo.hpp"
#include "bdris/oracle.hpp"
#include "bdris/random.hpp"
#include "bdris/scattering.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bdris;

enum class Format
{
    Csv,
    Json,
};

const std::map<std::string, Format> format_names{{"csv", Format::Csv}, {"json", Format::Json}};
const std::map<std::string, PolarizationRelation> relation_names{
    {"same", PolarizationRelation::Same},
    {"opposite", PolarizationRelation::Opposite},
    {"uni", PolarizationRelation::Uni}};
const std::map<std::string, FadingLaw> fading_names{{"rayleigh", FadingLaw::Rayleigh},
                                                    {"los", FadingLaw::Los}};

// The four dual-polarized scenario curves, in fixed emission order.
constexpr std::array<Scenario, 4> gain_scenarios{{{PolarizationRelation::Same, FadingLaw::Rayleigh},
                                                  {PolarizationRelation::Opposite, FadingLaw::Rayleigh},
                                                  {PolarizationRelation::Same, FadingLaw::Los},
                                                  {PolarizationRelation::Opposite, FadingLaw::Los}}};

int write_output(const std::string &path, const std::string &content)
{
    if (path.empty())
    {
        std::cout << content;
        return 0;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
    {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 1;
    }
    file << content;
    file.flush();
    if (!file.good())
    {
        std::cerr << "error: failed while writing '" << path << "'\n";
        return 1;
    }
    return 0;
}

std::string render_csv(const std::vector<std::string> &header,
                       const std::vector<std::vector<std::string>> &rows)
{
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto &row : rows)
    {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

std::string render_json(const nlohmann::json &j)
{
    return j.dump(2) + "\n";
}

bool check_even_n(int n)
{
    if (n < 2 || n % 2 != 0)
    {
        std::cerr << "error: --n must be even and at least 2, got " << n << "\n";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// sweep-gain: asymptotic fully/single gain per scenario over a chi grid,
// optionally with a finite-N empirical ratio on common channel draws.

struct SweepGainArgs
{
    std::vector<double> chi_grid;
    bool empirical = false;
    int n = 64;
    long long trials = 100000;
    std::uint64_t seed = 0;
    Format format = Format::Csv;
    std::string out;
};

int run_sweep_gain(SweepGainArgs args)
{
    if (args.chi_grid.empty())
        for (int i = 0; i <= 20; ++i)
            args.chi_grid.push_back(static_cast<double>(i) / 20.0);
    if (args.empirical && !check_even_n(args.n))
        return 2;

    std::vector<std::string> header{"relation", "fading", "chi", "gain"};
    if (args.empirical)
        header.insert(header.end(),
                      {"n", "trials", "seed", "gain_empirical", "gain_empirical_stderr"});

    std::vector<std::vector<std::string>> rows;
    nlohmann::json records = nlohmann::json::array();
    for (const Scenario &scenario : gain_scenarios)
        for (double chi : args.chi_grid)
        {
            const double g = gain(scenario, chi);
            std::vector<std::string> row{to_string(scenario.relation), to_string(scenario.fading),
                                         format_double(chi), format_double(g)};
            nlohmann::json record{{"relation", to_string(scenario.relation)},
                                  {"fading", to_string(scenario.fading)},
                                  {"chi", chi},
                                  {"gain", json_number(g)}};
            if (args.empirical)
            {
                const GainEstimate est = estimate_gain(
                    scenario_config(scenario, args.n, chi), args.trials, args.seed);
                row.insert(row.end(),
                           {std::to_string(args.n), std::to_string(args.trials),
                            std::to_string(args.seed), format_double(est.ratio),
                            format_double(est.ratio_std_error)});
                record["n"] = args.n;
                record["trials"] = args.trials;
                record["seed"] = args.seed;
                record["gain_empirical"] = json_number(est.ratio);
                record["gain_empirical_stderr"] = json_number(est.ratio_std_error);
            }
            rows.push_back(std::move(row));
            records.push_back(std::move(record));
        }

    return write_output(args.out, args.format == Format::Csv ? render_csv(header, rows)
                                                             : render_json(records));
}

// ---------------------------------------------------------------------------
// pareto: best power versus circuit complexity on the opposite-polarized
// pure-LoS link.

struct ParetoArgs
{
    int n = 64;
    std::vector<double> chi_grid;
    Format format = Format::Csv;
    std::string out;
};

int run_pareto(ParetoArgs args)
{
    if (!check_even_n(args.n))
        return 2;
    if (args.chi_grid.empty())
        args.chi_grid = {0.0, 0.1, 0.5, 1.0};

    const std::vector<std::string> header{"chi", "n_pairs", "complexity", "power"};
    std::vector<std::vector<std::string>> rows;
    nlohmann::json records = nlohmann::json::array();
    for (double chi : args.chi_grid)
        for (const ParetoPoint &point : pareto_frontier(args.n, chi))
        {
            rows.push_back({format_double(chi), std::to_string(point.n_pairs),
                            std::to_string(point.complexity), format_double(point.power)});
            records.push_back({{"chi", chi},
                               {"n_pairs", point.n_pairs},
                               {"complexity", point.complexity},
                               {"power", json_number(point.power)}});
        }

    return write_output(args.out, args.format == Format::Csv ? render_csv(header, rows)
                                                             : render_json(records));
}

// ---------------------------------------------------------------------------
// verify-scaling: Monte Carlo (Rayleigh) and deterministic (LoS) checks of
// every power law, one verdict per cell.

struct VerifyScalingArgs
{
    std::vector<int> n_list;
    std::vector<double> chi_grid;
    long long trials = 100000;
    std::uint64_t seed = 0;
    double rel_tol = 0.01;
    bool corrupt_law = false;
    Format format = Format::Csv;
    std::string out;
};

int run_verify_scaling(VerifyScalingArgs args)
{
    if (args.n_list.empty())
        args.n_list = {8, 16, 32};
    if (args.chi_grid.empty())
        args.chi_grid = {0.0, 0.5, 1.0};
    for (int n : args.n_list)
        if (!check_even_n(n))
            return 2;

    // Deterministic rows need only a handful of draws; their verdict is an
    // exact (1e-9 relative) comparison rather than a statistical one.
    constexpr long long los_trials = 8;
    constexpr double los_rel_tol = 1e-9;
    constexpr std::array<PolarizationRelation, 3> relations{
        PolarizationRelation::Uni, PolarizationRelation::Same, PolarizationRelation::Opposite};
    constexpr std::array<FadingLaw, 2> fadings{FadingLaw::Rayleigh, FadingLaw::Los};
    constexpr std::array<ArchClass, 2> arch_classes{ArchClass::Single, ArchClass::Fully};

    const std::vector<std::string> header{"relation", "fading", "arch",   "n",      "chi",
                                          "trials",   "seed",   "mean",   "stderr", "target",
                                          "verdict"};
    std::vector<std::vector<std::string>> rows;
    nlohmann::json records = nlohmann::json::array();
    bool all_passed = true;

    for (int n : args.n_list)
        for (PolarizationRelation relation : relations)
            for (FadingLaw fading : fadings)
                for (ArchClass arch : arch_classes)
                {
                    // The uni-polarized laws do not depend on chi; emit them once.
                    const std::vector<double> chis =
                        relation == PolarizationRelation::Uni ? std::vector<double>{1.0}
                                                              : args.chi_grid;
                    for (double chi : chis)
                    {
                        const Scenario scenario{relation, fading};
                        const long long trials =
                            fading == FadingLaw::Rayleigh ? args.trials : los_trials;
                        const double rel_tol =
                            fading == FadingLaw::Rayleigh ? args.rel_tol : los_rel_tol;
                        EstimateReport report =
                            verify_scaling_law(scenario, arch, n, chi, trials, args.seed, rel_tol);
                        if (args.corrupt_law)
                            attach_verdict(report, 1.1 * *report.target, rel_tol);
                        all_passed = all_passed && *report.passed;

                        rows.push_back({to_string(relation), to_string(fading), to_string(arch),
                                        std::to_string(n), format_double(chi),
                                        std::to_string(report.trials),
                                        std::to_string(report.seed), format_double(report.mean),
                                        format_double(report.std_error),
                                        format_double(*report.target),
                                        *report.passed ? "pass" : "fail"});
                        records.push_back({{"relation", to_string(relation)},
                                           {"fading", to_string(fading)},
                                           {"arch", to_string(arch)},
                                           {"n", n},
                                           {"chi", chi},
                                           {"report", to_json(report)}});
                    }
                }

    const int io_status = write_output(args.out, args.format == Format::Csv
                                                     ? render_csv(header, rows)
                                                     : render_json(records));
    if (io_status != 0)
        return io_status;
    return all_passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// synth: synthesize the optimal scattering matrix for one channel draw and
// report the achieved power against the architecture's bound.

struct SynthArgs
{
    int n = 0;
    double chi = 0.5;
    PolarizationRelation relation = PolarizationRelation::Opposite;
    FadingLaw fading = FadingLaw::Los;
    std::string arch_text;
    bool zero_phase = false;
    std::uint64_t seed = 0;
    Format format = Format::Json;
    std::string out;
};

RisArchitecture parse_architecture(const std::string &text, int n)
{
    if (text == "single")
        return RisArchitecture::single(n);
    if (text == "group2")
        return RisArchitecture::opposite_pairs(n);
    if (text == "fully")
        return RisArchitecture::fully(n);

    // Explicit partition: groups separated by ';', elements by ','.
    std::vector<std::vector<int>> groups;
    std::istringstream group_stream(text);
    std::string group_text;
    while (std::getline(group_stream, group_text, ';'))
    {
        std::vector<int> group;
        std::istringstream element_stream(group_text);
        std::string element_text;
        while (std::getline(element_stream, element_text, ','))
        {
            size_t consumed = 0;
            int element = 0;
            try
            {
                element = std::stoi(element_text, &consumed);
            }
            catch (const std::exception &)
            {
                throw std::invalid_argument("unparseable element index '" + element_text + "'");
            }
            if (consumed != element_text.size())
                throw std::invalid_argument("unparseable element index '" + element_text + "'");
            group.push_back(element);
        }
        groups.push_back(std::move(group));
    }
    return RisArchitecture(n, std::move(groups));
}

int run_synth(const SynthArgs &args)
{
    if (!check_even_n(args.n))
        return 2;
    if (args.format == Format::Csv)
    {
        std::cerr << "error: synth emits JSON only\n";
        return 2;
    }
    if (args.zero_phase && args.fading != FadingLaw::Los)
    {
        std::cerr << "error: --zero-phase requires --fading los\n";
        return 2;
    }

    RisArchitecture arch = RisArchitecture::single(2);
    try
    {
        arch = parse_architecture(args.arch_text, args.n);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: invalid --arch '" << args.arch_text << "': " << e.what() << "\n";
        return 2;
    }

    SystemConfig config = scenario_config({args.relation, args.fading}, args.n, args.chi);
    if (args.zero_phase)
    {
        const std::vector<double> zeros(static_cast<size_t>(args.n), 0.0);
        config.fading = FadingModel::los_fixed(zeros, zeros);
    }

    // The channel equals trial 0 of the estimators run with the same seed.
    RngStream rng = RngStream::substream(args.seed, 0);
    const ChannelRealization ch = sample_channel(config, rng);
    const ScatteringMatrix theta = synth_group_optimal(arch, ch.h_r, ch.h_t);

    nlohmann::json j = to_json(theta);
    j["achieved_power"] = json_number(received_power(theta, ch.h_r, ch.h_t, config.tx_power));
    j["bound_power"] = json_number(max_power(arch, ch.h_r, ch.h_t, config.tx_power));
    j["symmetry_residual"] = json_number(theta.symmetry_residual());
    j["unitarity_residual"] = json_number(theta.unitarity_residual());
    j["block_residual"] = json_number(theta.block_residual());
    return write_output(args.out, render_json(j));
}

// ---------------------------------------------------------------------------
// oracle-check: exhaustive architecture search versus the closed-form
// frontier, one verdict per (n, n_pairs, chi).

struct OracleCheckArgs
{
    std::vector<int> n_list;
    std::vector<double> chi_grid;
    double rel_tol = 1e-9;
    std::uint64_t seed = 0;
    Format format = Format::Json;
    std::string out;
};

int run_oracle_check(OracleCheckArgs args)
{
    if (args.n_list.empty())
        args.n_list = {4, 6, 8};
    if (args.chi_grid.empty())
        args.chi_grid = {0.0, 0.1, 0.5, 0.9, 1.0};
    for (int n : args.n_list)
    {
        if (!check_even_n(n))
            return 2;
        if (n > 10)
        {
            std::cerr << "error: --n capped at 10 for exhaustive search, got " << n << "\n";
            return 2;
        }
    }
    if (args.format == Format::Csv)
    {
        std::cerr << "error: oracle-check emits JSON only\n";
        return 2;
    }

    nlohmann::json records = nlohmann::json::array();
    bool all_passed = true;
    for (int n : args.n_list)
        for (int n_pairs = 0; n_pairs <= n / 2; ++n_pairs)
            for (double chi : args.chi_grid)
            {
                const BruteForceResult search = brute_force_best(n, n_pairs, chi, args.seed);
                const double formula = pareto_power(n, n_pairs, chi);
                const double scale = std::max(formula, 1.0);
                const double rel_error = std::abs(search.best_power - formula) / scale;
                bool pass = rel_error <= args.rel_tol;

                // The predicted maximizer structure is unique only away from
                // the chi endpoints (ties appear at chi = 0 power 0 and at
                // chi = 1, where grouping stops mattering).
                nlohmann::json structure_ok = nullptr;
                if (chi > 0.0 && chi < 1.0 && n_pairs >= 1)
                {
                    bool structural = true;
                    for (const auto &groups : search.maximizers)
                        structural = structural && is_n_pair_structure(groups, n, n_pairs);
                    structure_ok = structural;
                    pass = pass && structural;
                }
                all_passed = all_passed && pass;

                records.push_back({{"n", n},
                                   {"n_pairs", n_pairs},
                                   {"chi", chi},
                                   {"oracle_power", json_number(search.best_power)},
                                   {"formula_power", json_number(formula)},
                                   {"rel_error", json_number(rel_error)},
                                   {"partitions", search.partitions_examined},
                                   {"maximizers", static_cast<long long>(search.maximizers.size())},
                                   {"structure_ok", structure_ok},
                                   {"verdict", pass ? "pass" : "fail"}});
            }

    const int io_status = write_output(args.out, render_json(records));
    if (io_status != 0)
        return io_status;
    return all_passed ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Dual-polarized RIS link simulator: scaling laws, scattering-matrix synthesis, "
                 "and exhaustive architecture search"};
    app.require_subcommand(1);

    SweepGainArgs sweep_args;
    CLI::App *sweep = app.add_subcommand(
        "sweep-gain", "Fully/single power gain for each scenario over a chi grid");
    sweep->add_option("--chi", sweep_args.chi_grid, "chi grid (default 0,0.05,...,1)")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    sweep->add_flag("--empirical", sweep_args.empirical,
                    "add a finite-N Monte Carlo ratio next to each asymptotic gain");
    sweep->add_option("--n", sweep_args.n, "elements for the empirical ratio")
        ->capture_default_str();
    sweep->add_option("--trials", sweep_args.trials, "Monte Carlo trials for the empirical ratio")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "master seed")->capture_default_str();
    sweep->add_option("--format", sweep_args.format, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    sweep->add_option("--out", sweep_args.out, "output path (default stdout)");

    ParetoArgs pareto_args;
    CLI::App *pareto = app.add_subcommand(
        "pareto", "Best power versus circuit complexity for mixed-polarization pairings");
    pareto->add_option("--n", pareto_args.n, "number of RIS elements")->capture_default_str();
    pareto->add_option("--chi", pareto_args.chi_grid, "chi grid (default 0,0.1,0.5,1)")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    pareto->add_option("--format", pareto_args.format, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    pareto->add_option("--out", pareto_args.out, "output path (default stdout)");

    VerifyScalingArgs verify_args;
    CLI::App *verify = app.add_subcommand(
        "verify-scaling",
        "Check every closed-form power law: Monte Carlo for Rayleigh cells, exact for LoS cells");
    verify->add_option("--n", verify_args.n_list, "element counts (default 8,16,32)")
        ->delimiter(',');
    verify->add_option("--chi", verify_args.chi_grid, "chi grid (default 0,0.5,1)")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    verify->add_option("--trials", verify_args.trials, "trials per Rayleigh cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--seed", verify_args.seed, "master seed")->capture_default_str();
    verify->add_option("--tol", verify_args.rel_tol, "relative tolerance for Rayleigh cells")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    verify->add_flag("--corrupt-law", verify_args.corrupt_law)->group(""); // negative control
    verify->add_option("--format", verify_args.format, "output format")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    verify->add_option("--out", verify_args.out, "output path (default stdout)");

    SynthArgs synth_args;
    CLI::App *synth = app.add_subcommand(
        "synth", "Synthesize the optimal scattering matrix for one channel draw");
    synth->add_option("--n", synth_args.n, "number of RIS elements")->required();
    synth->add_option("--chi", synth_args.chi, "inverse cross-polarization discrimination")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    synth->add_option("--relation", synth_args.relation,
                      "tx/rx polarization relation (uni ignores --chi)")
        ->transform(CLI::CheckedTransformer(relation_names, CLI::ignore_case));
    synth->add_option("--fading", synth_args.fading, "fading model")
        ->transform(CLI::CheckedTransformer(fading_names, CLI::ignore_case));
    synth
        ->add_option("--arch", synth_args.arch_text,
                     "'single', 'group2', 'fully', or explicit groups like '1,3;2,4'")
        ->required();
    synth->add_flag("--zero-phase", synth_args.zero_phase,
                    "use all-zero phases instead of seeded ones (LoS only)");
    synth->add_option("--seed", synth_args.seed, "master seed")->capture_default_str();
    synth->add_option("--format", synth_args.format, "output format (json only)")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    synth->add_option("--out", synth_args.out, "output path (default stdout)");

    OracleCheckArgs oracle_args;
    CLI::App *oracle = app.add_subcommand(
        "oracle-check",
        "Exhaustively search all architectures within a complexity budget and compare the best "
        "power against the closed-form frontier");
    oracle->add_option("--n", oracle_args.n_list, "element counts (default 4,6,8; at most 10)")
        ->delimiter(',');
    oracle->add_option("--chi", oracle_args.chi_grid, "chi grid (default 0,0.1,0.5,0.9,1)")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    oracle->add_option("--tol", oracle_args.rel_tol, "relative tolerance")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    oracle->add_option("--seed", oracle_args.seed, "seed for the channel phase draw")
        ->capture_default_str();
    oracle->add_option("--format", oracle_args.format, "output format (json only)")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    oracle->add_option("--out", oracle_args.out, "output path (default stdout)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (app.got_subcommand(sweep))
            return run_sweep_gain(sweep_args);
        if (app.got_subcommand(pareto))
            return run_pareto(pareto_args);
        if (app.got_subcommand(verify))
            return run_verify_scaling(verify_args);
        if (app.got_subcommand(synth))
            return run_synth(synth_args);
        if (app.got_subcommand(oracle))
            return run_oracle_check(oracle_args);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
