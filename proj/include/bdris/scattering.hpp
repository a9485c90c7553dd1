// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Core>
#include <vector>

namespace bdris {

// A BD-RIS architecture is a partition of the N RIS elements into groups of
// interconnected elements. The scattering matrix of a lossless reciprocal
// network with this topology is symmetric, unitary and block-sparse: entries
// joining elements of different groups are zero. Element indices are 1-based
// throughout (element 1..N/2 vertical, N/2+1..N horizontal).
class RisArchitecture
{
  public:
    /// Validates that `groups` is a partition of {1..n_elements} with no
    /// empty group; throws std::invalid_argument otherwise.
    RisArchitecture(int n_elements, std::vector<std::vector<int>> groups);

    /// Single-connected (diagonal) RIS: all groups are singletons, C = N.
    static RisArchitecture single(int n_elements);

    /// Fully-connected RIS: one group of all N elements, C = N(N+1)/2.
    static RisArchitecture fully(int n_elements);

    /// Group size 2, pairing element i with element N/2+i (one vertical and
    /// one horizontal element per group). C = 3N/2.
    static RisArchitecture opposite_pairs(int n_elements);

    int n_elements() const { return n_elements_; }
    const std::vector<std::vector<int>> &groups() const { return groups_; }

    /// Number of tunable impedance components: sum over groups of
    /// N_g (N_g + 1) / 2.
    int complexity() const;

    bool operator==(const RisArchitecture &other) const = default;

  private:
    int n_elements_;
    std::vector<std::vector<int>> groups_;
};

struct ScatteringMatrix
{
    Eigen::MatrixXcd theta;
    RisArchitecture architecture;

    double symmetry_residual() const;  // max |theta - theta^T|
    double unitarity_residual() const; // max |theta^H theta - I|
    double block_residual() const;     // max |theta_ij| across group boundaries
};

/// Optimal diagonal scattering matrix for a single-connected RIS:
/// theta_nn = exp(-j (arg h_r[n] + arg h_t[n])), which aligns all cascaded
/// paths and achieves (sum_n |h_r[n] h_t[n]|)^2. arg(0) is taken as 0.
ScatteringMatrix synth_diagonal(const Eigen::RowVectorXcd &h_r, const Eigen::VectorXcd &h_t);

/// Symmetric unitary Q with Q a = b, for unit vectors a, b (checked to
/// 1e-12). Symmetry, unitarity and mapping residuals stay below ~1e-13
/// even when conj(b) is nearly parallel to a.
Eigen::MatrixXcd map_symmetric_unitary(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

/// Optimal scattering matrix for an arbitrary group-connected architecture:
/// per group g the block maps h_t|_g to the direction of conj(h_r|_g)^T, so
/// every group contributes |h_r|_g| |h_t|_g| coherently and the achieved
/// power equals max_power(arch, ...). Groups whose channel restriction has
/// zero norm contribute nothing and receive an identity block.
ScatteringMatrix synth_group_optimal(const RisArchitecture &arch, const Eigen::RowVectorXcd &h_r,
                                     const Eigen::VectorXcd &h_t);

/// P_T |h_r theta h_t|^2.
double received_power(const ScatteringMatrix &theta, const Eigen::RowVectorXcd &h_r,
                      const Eigen::VectorXcd &h_t, double tx_power = 1.0);

/// Best received power attainable by the architecture:
/// P_T (sum_g |h_r|_g| |h_t|_g|)^2. Allocation-free; safe in hot loops.
double max_power(const RisArchitecture &arch, const Eigen::RowVectorXcd &h_r,
                 const Eigen::VectorXcd &h_t, double tx_power = 1.0);

} // namespace bdris
