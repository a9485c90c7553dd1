// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/scattering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace bdris {

RisArchitecture::RisArchitecture(int n_elements, std::vector<std::vector<int>> groups)
    : n_elements_(n_elements), groups_(std::move(groups))
{
    if (n_elements_ < 1)
        throw std::invalid_argument("RisArchitecture: n_elements must be positive, got " +
                                    std::to_string(n_elements_));

    std::vector<char> seen(static_cast<size_t>(n_elements_), 0);
    int covered = 0;
    for (const auto &group : groups_)
    {
        if (group.empty())
            throw std::invalid_argument("RisArchitecture: empty group");
        for (int e : group)
        {
            if (e < 1 || e > n_elements_)
                throw std::out_of_range("RisArchitecture: element index " + std::to_string(e) +
                                        " outside 1.." + std::to_string(n_elements_));
            if (seen[static_cast<size_t>(e - 1)])
                throw std::invalid_argument("RisArchitecture: element " + std::to_string(e) +
                                            " appears in more than one group");
            seen[static_cast<size_t>(e - 1)] = 1;
            ++covered;
        }
    }
    if (covered != n_elements_)
        throw std::invalid_argument("RisArchitecture: groups cover " + std::to_string(covered) +
                                    " of " + std::to_string(n_elements_) + " elements");
}

RisArchitecture RisArchitecture::single(int n_elements)
{
    std::vector<std::vector<int>> groups;
    groups.reserve(static_cast<size_t>(n_elements));
    for (int e = 1; e <= n_elements; ++e)
        groups.push_back({e});
    return RisArchitecture(n_elements, std::move(groups));
}

RisArchitecture RisArchitecture::fully(int n_elements)
{
    std::vector<int> all(static_cast<size_t>(n_elements));
    for (int e = 1; e <= n_elements; ++e)
        all[static_cast<size_t>(e - 1)] = e;
    return RisArchitecture(n_elements, {std::move(all)});
}

RisArchitecture RisArchitecture::opposite_pairs(int n_elements)
{
    if (n_elements % 2 != 0)
        throw std::invalid_argument("opposite_pairs: n_elements must be even, got " +
                                    std::to_string(n_elements));
    const int half = n_elements / 2;
    std::vector<std::vector<int>> groups;
    groups.reserve(static_cast<size_t>(half));
    for (int i = 1; i <= half; ++i)
        groups.push_back({i, half + i});
    return RisArchitecture(n_elements, std::move(groups));
}

int RisArchitecture::complexity() const
{
    int c = 0;
    for (const auto &group : groups_)
    {
        const int m = static_cast<int>(group.size());
        c += m * (m + 1) / 2;
    }
    return c;
}

double ScatteringMatrix::symmetry_residual() const
{
    return (theta - theta.transpose()).cwiseAbs().maxCoeff();
}

double ScatteringMatrix::unitarity_residual() const
{
    const Eigen::Index n = theta.rows();
    return (theta.adjoint() * theta - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

double ScatteringMatrix::block_residual() const
{
    // Group label per 0-based element index.
    const int n = architecture.n_elements();
    std::vector<int> label(static_cast<size_t>(n), -1);
    int g = 0;
    for (const auto &group : architecture.groups())
    {
        for (int e : group)
            label[static_cast<size_t>(e - 1)] = g;
        ++g;
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (label[static_cast<size_t>(i)] != label[static_cast<size_t>(j)])
                worst = std::max(worst, std::abs(theta(i, j)));
    return worst;
}

ScatteringMatrix synth_diagonal(const Eigen::RowVectorXcd &h_r, const Eigen::VectorXcd &h_t)
{
    if (h_r.size() != h_t.size())
        throw std::invalid_argument("synth_diagonal: channel length mismatch");
    const int n = static_cast<int>(h_r.size());
    if (n < 1)
        throw std::invalid_argument("synth_diagonal: empty channel");

    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
    {
        const double phase = std::arg(h_r(i)) + std::arg(h_t(i));
        theta(i, i) = std::polar(1.0, -phase);
    }
    return ScatteringMatrix{std::move(theta), RisArchitecture::single(n)};
}

namespace {

// Columns of an orthonormal basis of the complement of span(U), obtained from
// the full Householder QR of U. U must have orthonormal columns.
Eigen::MatrixXcd orthogonal_complement(const Eigen::MatrixXcd &u)
{
    const Eigen::Index m = u.rows();
    const Eigen::Index k = u.cols();
    if (k >= m)
        return Eigen::MatrixXcd(m, 0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(u);
    Eigen::MatrixXcd q = qr.householderQ();
    // The first k columns of Q span the same subspace as U but may differ
    // from U by per-column phases; the remaining m-k columns are exactly an
    // orthonormal basis of the complement.
    return q.rightCols(m - k);
}

} // namespace

Eigen::MatrixXcd map_symmetric_unitary(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
    const Eigen::Index m = a.size();
    if (b.size() != m)
        throw std::invalid_argument("map_symmetric_unitary: dimension mismatch");
    if (m < 1)
        throw std::invalid_argument("map_symmetric_unitary: empty input");
    if (std::abs(a.norm() - 1.0) > 1e-12 || std::abs(b.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("map_symmetric_unitary: inputs must be unit vectors");

    // Strategy: find symmetric unitary Q with Q a = b. Writing c = conj(b),
    // symmetry of Q makes the pair {a, c} special: Q a = conj(c) and
    // Q c = conj(a) can hold simultaneously. Build an orthonormal basis
    // {a, u2} of span{a, c}, express the restriction of Q there as a 2x2
    // symmetric unitary core, and act as conj(V) V^H (a "phase-free
    // reflection") on the complement.
    const Eigen::VectorXcd c = b.conjugate();
    std::complex<double> mu = a.dot(c); // <a, c> with Eigen's conjugate-first convention
    Eigen::VectorXcd w = c - mu * a;
    // One re-orthogonalization pass keeps the basis accurate when c is
    // nearly parallel to a.
    const std::complex<double> delta = a.dot(w);
    w -= delta * a;
    mu += delta;
    const double r = w.norm();

    // The two-dimensional construction stays accurate for tiny r: the
    // re-orthogonalized w is orthogonal to a at machine precision relative to
    // its own norm, and normalizing w/r does not amplify error. Fall back to
    // the rank-one form only when w is dominated by subtraction noise; the
    // discarded component then perturbs Q a by at most ~1e-13.
    if (r > 1e-13)
    {
        Eigen::MatrixXcd u(m, 2);
        u.col(0) = a;
        u.col(1) = w / r;
        // Core acting on span{a, u2}: symmetric by construction, unitary
        // because |mu|^2 + r^2 = 1.
        Eigen::Matrix2cd core;
        core << std::conj(mu), r, r, -mu;
        const Eigen::MatrixXcd v = orthogonal_complement(u);
        return u.conjugate() * core * u.adjoint() + v.conjugate() * v.adjoint();
    }

    // c is (numerically) a phase multiple of a: Q = conj(phase) * conj(a) a^H
    // plus the phase-free reflection on the complement.
    const double mag = std::abs(mu);
    const std::complex<double> phase = mag > 0.0 ? mu / mag : std::complex<double>(1.0, 0.0);
    Eigen::MatrixXcd u(m, 1);
    u.col(0) = a;
    const Eigen::MatrixXcd v = orthogonal_complement(u);
    return std::conj(phase) * (a.conjugate() * a.adjoint()) + v.conjugate() * v.adjoint();
}

ScatteringMatrix synth_group_optimal(const RisArchitecture &arch, const Eigen::RowVectorXcd &h_r,
                                     const Eigen::VectorXcd &h_t)
{
    const int n = arch.n_elements();
    if (h_r.size() != n || h_t.size() != n)
        throw std::invalid_argument("synth_group_optimal: channel length does not match architecture");

    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(n, n);
    for (const auto &group : arch.groups())
    {
        const int m = static_cast<int>(group.size());
        Eigen::VectorXcd hr_g(m), ht_g(m);
        for (int k = 0; k < m; ++k)
        {
            hr_g(k) = h_r(group[static_cast<size_t>(k)] - 1);
            ht_g(k) = h_t(group[static_cast<size_t>(k)] - 1);
        }
        const double nr = hr_g.norm();
        const double nt = ht_g.norm();

        Eigen::MatrixXcd block;
        if (nr == 0.0 || nt == 0.0)
        {
            // The group cannot contribute power; any admissible block works.
            block = Eigen::MatrixXcd::Identity(m, m);
        }
        else
        {
            const Eigen::VectorXcd a = ht_g / nt;
            const Eigen::VectorXcd b = hr_g.conjugate() / nr;
            block = map_symmetric_unitary(a, b);
        }
        for (int row = 0; row < m; ++row)
            for (int col = 0; col < m; ++col)
                theta(group[static_cast<size_t>(row)] - 1, group[static_cast<size_t>(col)] - 1) =
                    block(row, col);
    }
    return ScatteringMatrix{std::move(theta), arch};
}

double received_power(const ScatteringMatrix &theta, const Eigen::RowVectorXcd &h_r,
                      const Eigen::VectorXcd &h_t, double tx_power)
{
    if (h_r.size() != theta.theta.rows() || h_t.size() != theta.theta.cols())
        throw std::invalid_argument("received_power: dimension mismatch");
    const std::complex<double> h = h_r * theta.theta * h_t;
    return tx_power * std::norm(h);
}

double max_power(const RisArchitecture &arch, const Eigen::RowVectorXcd &h_r,
                 const Eigen::VectorXcd &h_t, double tx_power)
{
    const int n = arch.n_elements();
    if (h_r.size() != n || h_t.size() != n)
        throw std::invalid_argument("max_power: channel length does not match architecture");

    double amplitude = 0.0;
    for (const auto &group : arch.groups())
    {
        double sr = 0.0, st = 0.0;
        for (int e : group)
        {
            sr += std::norm(h_r(e - 1));
            st += std::norm(h_t(e - 1));
        }
        amplitude += std::sqrt(sr * st);
    }
    return tx_power * amplitude * amplitude;
}

} // namespace bdris
