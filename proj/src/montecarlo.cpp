// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/montecarlo.hpp"

#include "bdris/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bdris {

double simulate_trial(const SystemConfig &config, const RisArchitecture &arch, std::uint64_t seed,
                      std::uint64_t trial_index)
{
    if (arch.n_elements() != config.n_elements)
        throw std::invalid_argument("simulate_trial: architecture size does not match config");
    RngStream rng = RngStream::substream(seed, trial_index);
    const ChannelRealization ch = sample_channel(config, rng);
    return max_power(arch, ch.h_r, ch.h_t, config.tx_power);
}

EstimateReport estimate_mean_power(const SystemConfig &config, const RisArchitecture &arch,
                                   long long trials, std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("estimate_mean_power: trials must be positive, got " +
                                    std::to_string(trials));
    config.validate();

    double mean = 0.0;
    double m2 = 0.0;
    for (long long t = 0; t < trials; ++t)
    {
        const double power = simulate_trial(config, arch, seed, static_cast<std::uint64_t>(t));
        const double delta = power - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (power - mean);
    }

    EstimateReport report;
    report.mean = mean;
    report.trials = trials;
    report.seed = seed;
    if (trials > 1)
    {
        const double variance = m2 / static_cast<double>(trials - 1);
        report.std_error = std::sqrt(variance / static_cast<double>(trials));
    }
    return report;
}

void attach_verdict(EstimateReport &report, double target, double rel_tol)
{
    if (rel_tol < 0.0)
        throw std::invalid_argument("attach_verdict: rel_tol must be nonnegative");
    report.target = target;
    const double allowance = std::max(3.0 * report.std_error, rel_tol * std::abs(target));
    report.passed = std::abs(report.mean - target) <= allowance;
}

SystemConfig scenario_config(Scenario scenario, int n_elements, double chi)
{
    SystemConfig config;
    config.n_elements = n_elements;
    config.tx_pol = Polarization::Vertical;
    config.fading = scenario.fading == FadingLaw::Rayleigh ? FadingModel::rayleigh()
                                                           : FadingModel::los();
    switch (scenario.relation)
    {
    case PolarizationRelation::Same:
        config.chi = chi;
        config.rx_pol = Polarization::Vertical;
        break;
    case PolarizationRelation::Opposite:
        config.chi = chi;
        config.rx_pol = Polarization::Horizontal;
        break;
    case PolarizationRelation::Uni:
        config.chi = 1.0; // co-polarized array without cross-polarization imbalance
        config.rx_pol = Polarization::Vertical;
        break;
    }
    config.validate();
    return config;
}

EstimateReport verify_scaling_law(Scenario scenario, ArchClass arch, int n_elements, double chi,
                                  long long trials, std::uint64_t seed, double rel_tol)
{
    const SystemConfig config = scenario_config(scenario, n_elements, chi);
    const RisArchitecture architecture = arch == ArchClass::Single
                                             ? RisArchitecture::single(n_elements)
                                             : RisArchitecture::fully(n_elements);
    EstimateReport report = estimate_mean_power(config, architecture, trials, seed);
    attach_verdict(report, scaling_law(scenario, arch, n_elements, chi), rel_tol);
    return report;
}

GainEstimate estimate_gain(const SystemConfig &config, long long trials, std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("estimate_gain: trials must be positive, got " +
                                    std::to_string(trials));
    config.validate();
    const RisArchitecture fully = RisArchitecture::fully(config.n_elements);
    const RisArchitecture single = RisArchitecture::single(config.n_elements);

    // Bivariate Welford accumulation: both powers are evaluated on the same
    // channel draw, and the covariance feeds the ratio error below.
    double mean_f = 0.0, mean_s = 0.0;
    double m2_f = 0.0, m2_s = 0.0, co_moment = 0.0;
    for (long long t = 0; t < trials; ++t)
    {
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(t));
        const ChannelRealization ch = sample_channel(config, rng);
        const double pf = max_power(fully, ch.h_r, ch.h_t, config.tx_power);
        const double ps = max_power(single, ch.h_r, ch.h_t, config.tx_power);

        const double count = static_cast<double>(t + 1);
        const double df = pf - mean_f;
        mean_f += df / count;
        const double ds = ps - mean_s;
        mean_s += ds / count;
        m2_f += df * (pf - mean_f);
        m2_s += ds * (ps - mean_s);
        co_moment += df * (ps - mean_s);
    }

    GainEstimate estimate;
    estimate.fully.mean = mean_f;
    estimate.fully.trials = trials;
    estimate.fully.seed = seed;
    estimate.single.mean = mean_s;
    estimate.single.trials = trials;
    estimate.single.seed = seed;

    double var_f = 0.0, var_s = 0.0, cov = 0.0;
    if (trials > 1)
    {
        const double dof = static_cast<double>(trials - 1);
        var_f = m2_f / dof;
        var_s = m2_s / dof;
        cov = co_moment / dof;
        estimate.fully.std_error = std::sqrt(var_f / static_cast<double>(trials));
        estimate.single.std_error = std::sqrt(var_s / static_cast<double>(trials));
    }

    if (mean_s == 0.0)
    {
        estimate.ratio = std::numeric_limits<double>::infinity();
        estimate.ratio_std_error = std::numeric_limits<double>::infinity();
        return estimate;
    }

    const double ratio = mean_f / mean_s;
    estimate.ratio = ratio;
    // Delta method for a ratio of correlated sample means.
    const double ratio_var =
        (var_f - 2.0 * ratio * cov + ratio * ratio * var_s) /
        (static_cast<double>(trials) * mean_s * mean_s);
    estimate.ratio_std_error = std::sqrt(std::max(0.0, ratio_var));
    return estimate;
}

GainEstimate estimate_gain_rician(double rician_k, double chi, int n_elements, long long trials,
                                  std::uint64_t seed)
{
    SystemConfig config;
    config.n_elements = n_elements;
    config.chi = chi;
    config.tx_pol = Polarization::Vertical;
    config.rx_pol = Polarization::Horizontal;
    config.fading = FadingModel::rician(rician_k);
    return estimate_gain(config, trials, seed);
}

} // namespace bdris
