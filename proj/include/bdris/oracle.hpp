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
#include "bdris/scattering.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace bdris {

/// Search space for exhaustive architecture enumeration: all partitions of
/// {1..n_elements} whose complexity does not exceed max_complexity. The
/// budget can never drop below n_elements (every element keeps a component
/// to ground).
struct PartitionBudget
{
    PartitionBudget(int n_elements, int max_complexity);

    static PartitionBudget unbounded(int n_elements);

    int n_elements;
    int max_complexity;
};

/// Visits every partition within the budget exactly once, in
/// restricted-growth-string order. Groups are listed by first element and
/// elements ascend within a group. Complexity bounds prune the search, but
/// n_elements is still capped at 12 (about 4.2 million unbounded
/// partitions).
void for_each_partition(const PartitionBudget &budget,
                        const std::function<void(const std::vector<std::vector<int>> &)> &visit);

long long count_partitions(const PartitionBudget &budget);

std::vector<std::vector<std::vector<int>>> enumerate_partitions(const PartitionBudget &budget);

/// All architectures pairing each vertical element with a distinct
/// horizontal element: (n/2)! matchings. n must be even and at most 12.
std::vector<RisArchitecture> all_opposite_matchings(int n);

/// True iff the partition has exactly n_pairs two-element groups each
/// joining a vertical and a horizontal element, and singletons elsewhere.
bool is_n_pair_structure(const std::vector<std::vector<int>> &groups, int n_elements, int n_pairs);

struct BruteForceResult
{
    double best_power = 0.0;
    // Partitions within a relative tie tolerance of the best power.
    std::vector<std::vector<std::vector<int>>> maximizers;
    long long partitions_examined = 0;
};

/// Exhaustive search over every architecture with complexity at most
/// N + n_pairs on the opposite-polarized pure-LoS link. The channel phases
/// are drawn from `seed`; the searched power bound depends only on element
/// magnitudes, so every seed returns the same optimum. n_elements is capped
/// at 10.
BruteForceResult brute_force_best(int n_elements, int n_pairs, double chi, std::uint64_t seed = 0,
                                  double tie_rel_tol = 1e-9);

/// Checks that a perfect matching of vertical to horizontal elements
/// attains the fully-connected power (1+chi)^2 N^2 / 4 on the
/// opposite-polarized pure-LoS link, for n_draws independent random phase
/// draws. Throws if `pairing` is not such a matching.
bool pairing_attains_full_power(const RisArchitecture &pairing, double chi, int n_draws = 10,
                                std::uint64_t seed = 0);

/// Draws n_draws random channels, synthesizes the optimal scattering matrix
/// for each, and returns the worst relative mismatch between the received
/// power and the architecture's power bound. A check that the bound is
/// attained, independent of any closed-form expression.
double worst_synthesis_gap(const RisArchitecture &arch, const SystemConfig &config, int n_draws,
                           std::uint64_t seed);

} // namespace bdris
