// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "bdris/scattering.hpp"

#include <vector>

namespace bdris {

/// Relation between the transmit and receive polarizations. `Uni` is the
/// uni-polarized baseline: both ends co-polarized and no cross-polarization
/// imbalance (equivalent to `Same` with chi = 1).
enum class PolarizationRelation
{
    Same,
    Opposite,
    Uni,
};

enum class FadingLaw
{
    Rayleigh,
    Los,
};

/// Architecture family a closed-form law refers to.
enum class ArchClass
{
    Single,
    Fully,
};

struct Scenario
{
    PolarizationRelation relation;
    FadingLaw fading;
};

const char *to_string(PolarizationRelation relation);
const char *to_string(FadingLaw fading);
const char *to_string(ArchClass arch);

/// Expected received power of the optimally configured RIS, averaged over
/// fading. Exact for LoS (power is the same for every phase realization) and
/// an ensemble average for Rayleigh. n_elements must be even except for the
/// `Uni` relation, whose laws do not split the array by polarization.
double scaling_law(Scenario scenario, ArchClass arch, int n_elements, double chi,
                   double tx_power = 1.0);

/// Large-N limit of the fully-connected over single-connected power ratio.
/// Returns +infinity for the opposite-polarized scenarios at chi = 0, where
/// the single-connected power vanishes.
double gain(Scenario scenario, double chi);

/// scaling_law(Fully) / scaling_law(Single) at finite N; converges to
/// gain() as N grows.
double finite_n_gain(Scenario scenario, int n_elements, double chi);

/// Best received power for the opposite-polarized pure-LoS link using
/// n_pairs two-element groups (each joining a vertical and a horizontal
/// element) and singletons elsewhere:
///   P = P_T (n_pairs (1 + chi) + (N - 2 n_pairs) sqrt(chi))^2.
double pareto_power(int n_elements, int n_pairs, double chi, double tx_power = 1.0);

struct ParetoPoint
{
    int n_pairs;    // number of two-element mixed-polarization groups
    int complexity; // n_elements + n_pairs tunable components
    double power;
    RisArchitecture architecture; // attains `power`; complexity() == complexity
};

/// The power/complexity trade-off for the opposite-polarized pure-LoS link:
/// one point per n_pairs = 0 .. N/2. Power is nondecreasing in complexity
/// and strictly increasing for chi < 1.
std::vector<ParetoPoint> pareto_frontier(int n_elements, double chi, double tx_power = 1.0);

/// The architecture attaining pareto_power: pairs {i, N/2 + i} for
/// i = 1 .. n_pairs, all remaining elements as singletons.
RisArchitecture optimal_architecture(int n_elements, int n_pairs);

} // namespace bdris
