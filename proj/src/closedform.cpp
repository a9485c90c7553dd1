// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/closedform.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bdris {

namespace {

constexpr double pi_sq = std::numbers::pi * std::numbers::pi;

void check_chi(double chi)
{
    if (!(chi >= 0.0 && chi <= 1.0))
        throw std::out_of_range("chi must lie in [0, 1], got " + std::to_string(chi));
}

void check_n(int n_elements)
{
    if (n_elements < 2 || n_elements % 2 != 0)
        throw std::invalid_argument("n_elements must be even and at least 2, got " +
                                    std::to_string(n_elements));
}

} // namespace

const char *to_string(PolarizationRelation relation)
{
    switch (relation)
    {
    case PolarizationRelation::Same:
        return "same";
    case PolarizationRelation::Opposite:
        return "opposite";
    case PolarizationRelation::Uni:
        return "uni";
    }
    throw std::invalid_argument("unknown polarization relation");
}

const char *to_string(FadingLaw fading)
{
    switch (fading)
    {
    case FadingLaw::Rayleigh:
        return "rayleigh";
    case FadingLaw::Los:
        return "los";
    }
    throw std::invalid_argument("unknown fading law");
}

const char *to_string(ArchClass arch)
{
    switch (arch)
    {
    case ArchClass::Single:
        return "single";
    case ArchClass::Fully:
        return "fully";
    }
    throw std::invalid_argument("unknown architecture class");
}

double scaling_law(Scenario scenario, ArchClass arch, int n_elements, double chi, double tx_power)
{
    if (scenario.relation == PolarizationRelation::Uni)
    {
        if (n_elements < 1)
            throw std::invalid_argument("n_elements must be positive, got " +
                                        std::to_string(n_elements));
    }
    else
    {
        check_n(n_elements);
    }
    check_chi(chi);
    const double n = n_elements;
    double value = 0.0;

    if (scenario.fading == FadingLaw::Rayleigh)
    {
        switch (scenario.relation)
        {
        case PolarizationRelation::Uni:
            value = arch == ArchClass::Single ? n + n * (n - 1.0) * pi_sq / 16.0 : n * n;
            break;
        case PolarizationRelation::Same:
            value = arch == ArchClass::Single
                        ? (1.0 + chi * chi) / 2.0 * (n + n * (n / 2.0 - 1.0) * pi_sq / 16.0) +
                              pi_sq * chi / 32.0 * n * n
                        : (1.0 + chi) * (1.0 + chi) / 4.0 * n * n;
            break;
        case PolarizationRelation::Opposite:
            value = arch == ArchClass::Single
                        ? chi * (n + n * (n - 1.0) * pi_sq / 16.0)
                        : (1.0 + chi) * (1.0 + chi) / 4.0 * n * n;
            break;
        }
    }
    else // LoS: deterministic magnitudes, the optimum is the coherent sum
    {
        switch (scenario.relation)
        {
        case PolarizationRelation::Uni:
            value = n * n;
            break;
        case PolarizationRelation::Same:
            value = (1.0 + chi) * (1.0 + chi) / 4.0 * n * n;
            break;
        case PolarizationRelation::Opposite:
            value = arch == ArchClass::Single ? chi * n * n
                                              : (1.0 + chi) * (1.0 + chi) / 4.0 * n * n;
            break;
        }
    }
    return tx_power * value;
}

double gain(Scenario scenario, double chi)
{
    check_chi(chi);
    constexpr double inf = std::numeric_limits<double>::infinity();

    if (scenario.fading == FadingLaw::Rayleigh)
    {
        switch (scenario.relation)
        {
        case PolarizationRelation::Uni:
        case PolarizationRelation::Same:
            return 16.0 / pi_sq;
        case PolarizationRelation::Opposite:
            return chi == 0.0 ? inf : 4.0 * (1.0 + chi) * (1.0 + chi) / (pi_sq * chi);
        }
    }
    else
    {
        switch (scenario.relation)
        {
        case PolarizationRelation::Uni:
        case PolarizationRelation::Same:
            return 1.0;
        case PolarizationRelation::Opposite:
            return chi == 0.0 ? inf : (1.0 + chi) * (1.0 + chi) / (4.0 * chi);
        }
    }
    throw std::invalid_argument("unknown scenario");
}

double finite_n_gain(Scenario scenario, int n_elements, double chi)
{
    const double fully = scaling_law(scenario, ArchClass::Fully, n_elements, chi);
    const double single = scaling_law(scenario, ArchClass::Single, n_elements, chi);
    if (single == 0.0)
        return std::numeric_limits<double>::infinity();
    return fully / single;
}

double pareto_power(int n_elements, int n_pairs, double chi, double tx_power)
{
    check_n(n_elements);
    check_chi(chi);
    if (n_pairs < 0 || n_pairs > n_elements / 2)
        throw std::out_of_range("n_pairs must lie in 0 .. n_elements/2, got " +
                                std::to_string(n_pairs));
    const double amplitude =
        n_pairs * (1.0 + chi) + (n_elements - 2.0 * n_pairs) * std::sqrt(chi);
    return tx_power * amplitude * amplitude;
}

std::vector<ParetoPoint> pareto_frontier(int n_elements, double chi, double tx_power)
{
    check_n(n_elements);
    check_chi(chi);
    std::vector<ParetoPoint> frontier;
    frontier.reserve(static_cast<size_t>(n_elements / 2 + 1));
    for (int n_pairs = 0; n_pairs <= n_elements / 2; ++n_pairs)
        frontier.push_back({n_pairs, n_elements + n_pairs,
                            pareto_power(n_elements, n_pairs, chi, tx_power),
                            optimal_architecture(n_elements, n_pairs)});
    return frontier;
}

RisArchitecture optimal_architecture(int n_elements, int n_pairs)
{
    check_n(n_elements);
    const int half = n_elements / 2;
    if (n_pairs < 0 || n_pairs > half)
        throw std::out_of_range("n_pairs must lie in 0 .. n_elements/2, got " +
                                std::to_string(n_pairs));

    std::vector<std::vector<int>> groups;
    groups.reserve(static_cast<size_t>(n_elements - n_pairs));
    for (int i = 1; i <= n_pairs; ++i)
        groups.push_back({i, half + i});
    for (int e = n_pairs + 1; e <= half; ++e)
        groups.push_back({e});
    for (int e = half + n_pairs + 1; e <= n_elements; ++e)
        groups.push_back({e});
    return RisArchitecture(n_elements, std::move(groups));
}

} // namespace bdris
