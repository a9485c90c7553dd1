// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/oracle.hpp"

#include "bdris/random.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bdris {

namespace {

constexpr int max_enumeration_elements = 12;

void check_enumeration_size(int n)
{
    if (n > max_enumeration_elements)
        throw std::invalid_argument("partition enumeration: n_elements capped at " +
                                    std::to_string(max_enumeration_elements) + ", got " +
                                    std::to_string(n));
}

// Depth-first search over restricted growth strings. Element i (0-based)
// either joins one of the existing groups or opens a new one. Joining a
// group of size s raises the complexity by s + 1, a new singleton by 1, so
// the cheapest completion assigns every remaining element a new singleton;
// branches whose cheapest completion exceeds the budget are cut.
struct PartitionSearch
{
    int n;
    int max_complexity;
    const std::function<void(const std::vector<std::vector<int>> &)> &visit;
    std::vector<std::vector<int>> groups;

    void descend(int element, int complexity)
    {
        if (element == n)
        {
            visit(groups);
            return;
        }
        const int remaining_after = n - element - 1;
        for (auto &group : groups)
        {
            const int grown = complexity + static_cast<int>(group.size()) + 1;
            if (grown + remaining_after > max_complexity)
                continue;
            group.push_back(element + 1);
            descend(element + 1, grown);
            group.pop_back();
        }
        if (complexity + 1 + remaining_after <= max_complexity)
        {
            groups.push_back({element + 1});
            descend(element + 1, complexity + 1);
            groups.pop_back();
        }
    }
};

SystemConfig opposite_los_config(int n_elements, double chi)
{
    SystemConfig config;
    config.n_elements = n_elements;
    config.chi = chi;
    config.tx_pol = Polarization::Vertical;
    config.rx_pol = Polarization::Horizontal;
    config.fading = FadingModel::los();
    config.validate();
    return config;
}

} // namespace

PartitionBudget::PartitionBudget(int n_elements, int max_complexity)
    : n_elements(n_elements), max_complexity(max_complexity)
{
    if (n_elements < 1)
        throw std::invalid_argument("PartitionBudget: n_elements must be positive, got " +
                                    std::to_string(n_elements));
    if (max_complexity < n_elements)
        throw std::invalid_argument("PartitionBudget: max_complexity " +
                                    std::to_string(max_complexity) + " is below n_elements " +
                                    std::to_string(n_elements) +
                                    " (every element needs its component to ground)");
}

PartitionBudget PartitionBudget::unbounded(int n_elements)
{
    return PartitionBudget(n_elements, INT_MAX);
}

void for_each_partition(const PartitionBudget &budget,
                        const std::function<void(const std::vector<std::vector<int>> &)> &visit)
{
    check_enumeration_size(budget.n_elements);
    PartitionSearch search{budget.n_elements, budget.max_complexity, visit, {}};
    search.groups.reserve(static_cast<size_t>(budget.n_elements));
    search.descend(0, 0);
}

long long count_partitions(const PartitionBudget &budget)
{
    long long count = 0;
    for_each_partition(budget, [&](const std::vector<std::vector<int>> &) { ++count; });
    return count;
}

std::vector<std::vector<std::vector<int>>> enumerate_partitions(const PartitionBudget &budget)
{
    std::vector<std::vector<std::vector<int>>> out;
    for_each_partition(budget,
                       [&](const std::vector<std::vector<int>> &groups) { out.push_back(groups); });
    return out;
}

std::vector<RisArchitecture> all_opposite_matchings(int n)
{
    check_enumeration_size(n);
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("all_opposite_matchings: n must be even and at least 2, got " +
                                    std::to_string(n));
    const int half = n / 2;
    std::vector<int> horizontal(static_cast<size_t>(half));
    std::iota(horizontal.begin(), horizontal.end(), half + 1);

    std::vector<RisArchitecture> matchings;
    do
    {
        std::vector<std::vector<int>> groups;
        groups.reserve(static_cast<size_t>(half));
        for (int i = 0; i < half; ++i)
            groups.push_back({i + 1, horizontal[static_cast<size_t>(i)]});
        matchings.emplace_back(n, std::move(groups));
    } while (std::next_permutation(horizontal.begin(), horizontal.end()));
    return matchings;
}

bool is_n_pair_structure(const std::vector<std::vector<int>> &groups, int n_elements, int n_pairs)
{
    const int half = n_elements / 2;
    int mixed_pairs = 0;
    for (const auto &group : groups)
    {
        if (group.size() == 1)
            continue;
        if (group.size() != 2)
            return false;
        const bool first_vertical = group[0] <= half;
        const bool second_vertical = group[1] <= half;
        if (first_vertical == second_vertical)
            return false; // co-polarized pair
        ++mixed_pairs;
    }
    return mixed_pairs == n_pairs;
}

BruteForceResult brute_force_best(int n_elements, int n_pairs, double chi, std::uint64_t seed,
                                  double tie_rel_tol)
{
    if (n_elements > 10)
        throw std::invalid_argument("brute_force_best: n_elements capped at 10, got " +
                                    std::to_string(n_elements));
    if (n_pairs < 0 || n_pairs > n_elements / 2)
        throw std::out_of_range("brute_force_best: n_pairs must lie in 0 .. n_elements/2, got " +
                                std::to_string(n_pairs));

    const SystemConfig config = opposite_los_config(n_elements, chi);
    RngStream rng(seed);
    const ChannelRealization ch = sample_channel(config, rng);

    // The oracle recomputes the per-partition bound from scratch rather than
    // reusing library helpers: sum over groups of the product of restricted
    // channel norms, squared.
    const auto power_of = [&](const std::vector<std::vector<int>> &groups) {
        double amplitude = 0.0;
        for (const auto &group : groups)
        {
            double sr = 0.0, st = 0.0;
            for (int e : group)
            {
                sr += std::norm(ch.h_r(e - 1));
                st += std::norm(ch.h_t(e - 1));
            }
            amplitude += std::sqrt(sr * st);
        }
        return amplitude * amplitude;
    };

    const PartitionBudget budget(n_elements, n_elements + n_pairs);
    BruteForceResult result;
    for_each_partition(budget, [&](const std::vector<std::vector<int>> &groups) {
        ++result.partitions_examined;
        result.best_power = std::max(result.best_power, power_of(groups));
    });
    for_each_partition(budget, [&](const std::vector<std::vector<int>> &groups) {
        if (result.best_power - power_of(groups) <= tie_rel_tol * result.best_power)
            result.maximizers.push_back(groups);
    });
    return result;
}

bool pairing_attains_full_power(const RisArchitecture &pairing, double chi, int n_draws,
                                std::uint64_t seed)
{
    const int n = pairing.n_elements();
    if (!is_n_pair_structure(pairing.groups(), n, n / 2) ||
        static_cast<int>(pairing.groups().size()) != n / 2)
        throw std::invalid_argument(
            "pairing_attains_full_power: architecture is not a vertical-horizontal matching");
    if (n_draws < 1)
        throw std::invalid_argument("pairing_attains_full_power: n_draws must be positive");

    const SystemConfig config = opposite_los_config(n, chi);
    const double target = (1.0 + chi) * (1.0 + chi) * n * n / 4.0;
    for (int d = 0; d < n_draws; ++d)
    {
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(d));
        const ChannelRealization ch = sample_channel(config, rng);
        const double power = max_power(pairing, ch.h_r, ch.h_t);
        if (std::abs(power - target) > 1e-9 * target)
            return false;
    }
    return true;
}

double worst_synthesis_gap(const RisArchitecture &arch, const SystemConfig &config, int n_draws,
                           std::uint64_t seed)
{
    if (n_draws < 1)
        throw std::invalid_argument("worst_synthesis_gap: n_draws must be positive");
    config.validate();
    if (arch.n_elements() != config.n_elements)
        throw std::invalid_argument("worst_synthesis_gap: architecture size does not match config");

    double worst = 0.0;
    for (int d = 0; d < n_draws; ++d)
    {
        RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(d));
        const ChannelRealization ch = sample_channel(config, rng);
        const ScatteringMatrix theta = synth_group_optimal(arch, ch.h_r, ch.h_t);
        const double achieved = received_power(theta, ch.h_r, ch.h_t, config.tx_power);
        const double bound = max_power(arch, ch.h_r, ch.h_t, config.tx_power);
        const double gap = bound > 0.0 ? std::abs(achieved - bound) / bound : std::abs(achieved);
        worst = std::max(worst, gap);
    }
    return worst;
}

} // namespace bdris
