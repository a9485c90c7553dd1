// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "bdris/channel.hpp"
#include "bdris/closedform.hpp"
#include "bdris/scattering.hpp"

#include <cstdint>
#include <optional>

namespace bdris {

struct EstimateReport
{
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(trials); 0 for a single trial
    long long trials = 0;
    std::uint64_t seed = 0;
    std::optional<double> target; // set by attach_verdict
    std::optional<bool> passed;   // set by attach_verdict
};

/// Best received power for one independently seeded channel draw. Trials are
/// mutually independent and individually addressable, so estimates do not
/// depend on evaluation order and subsets can be reproduced in isolation.
double simulate_trial(const SystemConfig &config, const RisArchitecture &arch, std::uint64_t seed,
                      std::uint64_t trial_index);

/// Sample mean of simulate_trial over trial_index = 0 .. trials-1, with
/// streaming (Welford) variance accumulation.
EstimateReport estimate_mean_power(const SystemConfig &config, const RisArchitecture &arch,
                                   long long trials, std::uint64_t seed);

/// Records target and marks the report passed when the estimate is within
/// max(3 standard errors, rel_tol * |target|) of the target.
void attach_verdict(EstimateReport &report, double target, double rel_tol);

/// System configuration realizing a closed-form scenario: `Same` is
/// (vertical, vertical) at the given chi, `Opposite` is (vertical,
/// horizontal), and `Uni` is (vertical, vertical) with chi forced to 1.
SystemConfig scenario_config(Scenario scenario, int n_elements, double chi);

/// Estimates the mean optimal power for a scenario/architecture pair and
/// attaches a verdict against the corresponding closed-form law.
EstimateReport verify_scaling_law(Scenario scenario, ArchClass arch, int n_elements, double chi,
                                  long long trials, std::uint64_t seed, double rel_tol);

struct GainEstimate
{
    EstimateReport fully;
    EstimateReport single;
    double ratio = 0.0;           // mean fully-connected power / mean single-connected power
    double ratio_std_error = 0.0; // first-order (delta method) standard error of the ratio
};

/// Estimates the fully/single power ratio on common channel draws. The two
/// powers per trial are correlated, so the ratio error uses their sample
/// covariance. A vanishing single-connected mean yields an infinite ratio.
GainEstimate estimate_gain(const SystemConfig &config, long long trials, std::uint64_t seed);

/// estimate_gain for the opposite-polarized link under Rician fading with
/// the given K-factor on both links.
GainEstimate estimate_gain_rician(double rician_k, double chi, int n_elements, long long trials,
                                  std::uint64_t seed);

} // namespace bdris
