// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bdris {

Polarization opposite(Polarization pol)
{
    return pol == Polarization::Vertical ? Polarization::Horizontal : Polarization::Vertical;
}

const char *to_string(Polarization pol)
{
    return pol == Polarization::Vertical ? "vertical" : "horizontal";
}

FadingModel FadingModel::rayleigh()
{
    FadingModel m;
    m.kind = Kind::Rayleigh;
    return m;
}

FadingModel FadingModel::los()
{
    FadingModel m;
    m.kind = Kind::Los;
    return m;
}

FadingModel FadingModel::los_fixed(std::vector<double> phases_rx, std::vector<double> phases_tx)
{
    FadingModel m;
    m.kind = Kind::Los;
    m.phases_rx = std::move(phases_rx);
    m.phases_tx = std::move(phases_tx);
    return m;
}

FadingModel FadingModel::rician(double k_factor)
{
    if (!(k_factor >= 0.0))
        throw std::invalid_argument("Rician factor K must be non-negative.");
    FadingModel m;
    m.kind = Kind::Rician;
    m.rician_k = k_factor;
    return m;
}

void FadingModel::validate() const
{
    if (kind == Kind::Rician && !(rician_k >= 0.0))
        throw std::invalid_argument("Rician factor K must be non-negative.");
    if (kind == Kind::Rayleigh && (phases_rx || phases_tx))
        throw std::invalid_argument("Fixed phases apply to LoS/Rician fading only.");
}

void SystemConfig::validate() const
{
    if (n_elements <= 0 || n_elements % 2 != 0)
        throw std::invalid_argument("Element count N must be positive and even, got " +
                                    std::to_string(n_elements) + ".");
    if (!(chi >= 0.0 && chi <= 1.0))
        throw std::invalid_argument("chi must lie in [0, 1].");
    if (!(tx_power > 0.0))
        throw std::invalid_argument("Transmit power must be positive.");
    fading.validate();
}

Polarization element_polarization(int index, int n_elements)
{
    if (n_elements <= 0 || n_elements % 2 != 0)
        throw std::invalid_argument("Element count N must be positive and even.");
    if (index < 1 || index > n_elements)
        throw std::out_of_range("Element index " + std::to_string(index) + " outside 1.." +
                                std::to_string(n_elements) + ".");
    return index <= n_elements / 2 ? Polarization::Vertical : Polarization::Horizontal;
}

Eigen::VectorXd polarization_profile(LinkSide, Polarization pol, double chi, int n_elements)
{
    if (n_elements <= 0 || n_elements % 2 != 0)
        throw std::invalid_argument("Element count N must be positive and even.");
    if (!(chi >= 0.0 && chi <= 1.0))
        throw std::invalid_argument("chi must lie in [0, 1].");

    const double cross = std::sqrt(chi);
    Eigen::VectorXd profile(n_elements);
    for (int i = 1; i <= n_elements; ++i)
        profile(i - 1) = (element_polarization(i, n_elements) == pol) ? 1.0 : cross;
    return profile;
}

namespace {

void fill_los(Eigen::VectorXcd &out, const std::optional<std::vector<double>> &fixed,
              RngStream &rng)
{
    if (fixed) {
        if (static_cast<Eigen::Index>(fixed->size()) != out.size())
            throw std::invalid_argument("Fixed LoS phase list length does not match N.");
        for (Eigen::Index i = 0; i < out.size(); ++i)
            out(i) = std::polar(1.0, (*fixed)[static_cast<std::size_t>(i)]);
    } else {
        for (Eigen::Index i = 0; i < out.size(); ++i)
            out(i) = std::polar(1.0, rng.uniform_phase());
    }
}

void fill_rayleigh(Eigen::VectorXcd &out, RngStream &rng)
{
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out(i) = rng.complex_normal();
}

Eigen::VectorXcd sample_vector(const FadingModel &model,
                               const std::optional<std::vector<double>> &fixed, int n,
                               RngStream &rng)
{
    Eigen::VectorXcd v(n);
    switch (model.kind) {
    case FadingModel::Kind::Rayleigh:
        fill_rayleigh(v, rng);
        break;
    case FadingModel::Kind::Los:
        fill_los(v, fixed, rng);
        break;
    case FadingModel::Kind::Rician: {
        Eigen::VectorXcd los(n), scattered(n);
        fill_los(los, fixed, rng);
        fill_rayleigh(scattered, rng);
        const double k = model.rician_k;
        v = std::sqrt(k / (k + 1.0)) * los + std::sqrt(1.0 / (k + 1.0)) * scattered;
        break;
    }
    }
    return v;
}

} // namespace

FadingDraw sample_fading(const FadingModel &model, int n_elements, RngStream &rng)
{
    model.validate();
    if (n_elements < 2)
        throw std::invalid_argument("Need at least two RIS elements.");

    FadingDraw draw;
    draw.rx = sample_vector(model, model.phases_rx, n_elements, rng).transpose();
    draw.tx = sample_vector(model, model.phases_tx, n_elements, rng);
    return draw;
}

ChannelRealization compose(const SystemConfig &config, const FadingDraw &fading)
{
    config.validate();
    const int n = config.n_elements;
    if (fading.rx.size() != n || fading.tx.size() != n)
        throw std::invalid_argument("Fading vector length does not match N.");

    ChannelRealization real;
    real.h_tilde_r = fading.rx;
    real.h_tilde_t = fading.tx;
    real.p_r = polarization_profile(LinkSide::Receiver, config.rx_pol, config.chi, n).transpose();
    real.p_t = polarization_profile(LinkSide::Transmitter, config.tx_pol, config.chi, n);
    // Plain elementwise products; chi = 1 stays bit-exact (profile entries are 1.0).
    real.h_r.resize(n);
    for (int i = 0; i < n; ++i)
        real.h_r(i) = real.p_r(i) * real.h_tilde_r(i);
    real.h_t.resize(n);
    for (int i = 0; i < n; ++i)
        real.h_t(i) = real.p_t(i) * real.h_tilde_t(i);
    return real;
}

ChannelRealization sample_channel(const SystemConfig &config, RngStream &rng)
{
    config.validate();
    return compose(config, sample_fading(config.fading, config.n_elements, rng));
}

} // namespace bdris
