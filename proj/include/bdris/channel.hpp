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
#include <optional>
#include <vector>

#include "bdris/random.hpp"

namespace bdris {

// Dual-polarized cascaded channel model for a single-antenna Tx, a RIS with
// N elements (first N/2 vertically polarized, last N/2 horizontally
// polarized) and a single-antenna Rx. The composed channels are
//   h_r = p_r .* h_tilde_r   (1 x N, RIS -> Rx)
//   h_t = p_t .* h_tilde_t   (N x 1, Tx -> RIS)
// where the polarization profiles p_r, p_t hold 1 for co-polarized element /
// antenna pairs and sqrt(chi) for cross-polarized ones, chi in [0,1] being
// the inverse cross-polarization discrimination.

enum class Polarization { Vertical, Horizontal };

Polarization opposite(Polarization pol);
const char *to_string(Polarization pol);

enum class LinkSide { Receiver, Transmitter };

// Fading distribution of the uni-polarized channels h_tilde_r, h_tilde_t.
// LoS entries have unit modulus with phases either drawn uniformly from
// [0, 2*pi) or taken from an explicit per-vector list. Rician(K) mixes a LoS
// draw and a Rayleigh draw with weights sqrt(K/(K+1)) and sqrt(1/(K+1)), so
// K = 0 reproduces Rayleigh and K -> inf approaches LoS.
struct FadingModel
{
    enum class Kind { Rayleigh, Los, Rician };

    Kind kind = Kind::Rayleigh;
    double rician_k = 0.0; // Rician factor, >= 0; used by Kind::Rician only

    // Optional deterministic LoS phases (radians), one list per vector.
    // When absent, phases are drawn from the stream.
    std::optional<std::vector<double>> phases_rx;
    std::optional<std::vector<double>> phases_tx;

    static FadingModel rayleigh();
    static FadingModel los();
    static FadingModel los_fixed(std::vector<double> phases_rx, std::vector<double> phases_tx);
    static FadingModel rician(double k_factor);

    void validate() const; // throws std::invalid_argument
};

struct SystemConfig
{
    int n_elements = 0;   // N, positive and even
    double chi = 1.0;     // inverse XPD, in [0, 1]
    Polarization tx_pol = Polarization::Vertical;
    Polarization rx_pol = Polarization::Vertical;
    FadingModel fading;
    double tx_power = 1.0; // P_T in watts

    void validate() const; // throws std::invalid_argument
};

// One draw of the uni-polarized fading channels (h_tilde_r, h_tilde_t).
struct FadingDraw
{
    Eigen::RowVectorXcd rx; // h_tilde_r, 1 x N
    Eigen::VectorXcd tx;    // h_tilde_t, N x 1
};

struct ChannelRealization
{
    Eigen::RowVectorXcd h_tilde_r;
    Eigen::VectorXcd h_tilde_t;
    Eigen::RowVectorXd p_r;
    Eigen::VectorXd p_t;
    Eigen::RowVectorXcd h_r; // p_r .* h_tilde_r
    Eigen::VectorXcd h_t;    // p_t .* h_tilde_t
};

/// Polarization of RIS element `index` (1-based): vertical for
/// index <= N/2, horizontal otherwise.
Polarization element_polarization(int index, int n_elements);

/// Per-element amplitude weights seen by the link antenna on `side` with
/// polarization `pol`: entry i is 1 when the antenna matches
/// element_polarization(i, N) and sqrt(chi) otherwise. Receiver profiles are
/// used as rows, transmitter profiles as columns.
Eigen::VectorXd polarization_profile(LinkSide side, Polarization pol, double chi, int n_elements);

/// Draw (h_tilde_r, h_tilde_t), statistically independent of each other.
/// Stream consumption order is fixed: all of h_tilde_r first, then h_tilde_t
/// (for Rician, per vector: LoS phases first, then the scattered part).
FadingDraw sample_fading(const FadingModel &model, int n_elements, RngStream &rng);

/// Fill profiles and Hadamard products for one fading draw.
ChannelRealization compose(const SystemConfig &config, const FadingDraw &fading);

/// sample_fading + compose in one step.
ChannelRealization sample_channel(const SystemConfig &config, RngStream &rng);

} // namespace bdris
