// SPDX-License-Identifier: Apache-2.0
//
// bdris - dual-polarized beyond-diagonal RIS simulation toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "bdris/channel.hpp"
#include "bdris/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace bdris;

namespace {

// Streaming mean/variance over scalar samples.
struct Accumulator
{
    long long count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x)
    {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }
    double std_error() const
    {
        return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
    }
};

// Two-sample Kolmogorov-Smirnov p-value (asymptotic tail approximation).
double ks_two_sample_p(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size())
    {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    double tail = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k, sign = -sign)
        tail += sign * 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    return std::clamp(tail, 0.0, 1.0);
}

} // namespace

TEST_CASE("element polarization splits the array in half")
{
    CHECK(element_polarization(1, 4) == Polarization::Vertical);
    CHECK(element_polarization(2, 4) == Polarization::Vertical);
    CHECK(element_polarization(3, 4) == Polarization::Horizontal);
    CHECK(element_polarization(2, 2) == Polarization::Horizontal);
    CHECK_THROWS_AS(element_polarization(0, 4), std::out_of_range);
    CHECK_THROWS_AS(element_polarization(5, 4), std::out_of_range);
    CHECK_THROWS_AS(element_polarization(1, 3), std::invalid_argument);
    CHECK(opposite(Polarization::Vertical) == Polarization::Horizontal);
    CHECK(opposite(opposite(Polarization::Horizontal)) == Polarization::Horizontal);
}

TEST_CASE("polarization profile holds 1 on matches and sqrt(chi) elsewhere")
{
    const Eigen::VectorXd rx_v =
        polarization_profile(LinkSide::Receiver, Polarization::Vertical, 0.25, 4);
    REQUIRE(rx_v.size() == 4);
    CHECK(rx_v(0) == 1.0);
    CHECK(rx_v(1) == 1.0);
    CHECK(rx_v(2) == 0.5);
    CHECK(rx_v(3) == 0.5);

    const Eigen::VectorXd tx_h =
        polarization_profile(LinkSide::Transmitter, Polarization::Horizontal, 0.0, 2);
    CHECK(tx_h(0) == 0.0);
    CHECK(tx_h(1) == 1.0);

    const Eigen::VectorXd rx_h =
        polarization_profile(LinkSide::Receiver, Polarization::Horizontal, 1.0, 6);
    CHECK(rx_h.isConstant(1.0));

    CHECK_THROWS_AS(polarization_profile(LinkSide::Receiver, Polarization::Vertical, 1.5, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(polarization_profile(LinkSide::Receiver, Polarization::Vertical, 0.5, 5),
                    std::invalid_argument);
}

TEST_CASE("fading model factories validate their parameters")
{
    CHECK_THROWS_AS(FadingModel::rician(-0.5), std::invalid_argument);
    CHECK_NOTHROW(FadingModel::rician(0.0).validate());

    SystemConfig config;
    config.n_elements = 5;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.n_elements = 4;
    config.chi = 1.25;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.chi = 0.5;
    config.tx_power = 0.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.tx_power = 1.0;
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("line-of-sight fading with zero phases gives all-ones vectors")
{
    RngStream rng(7);
    const std::vector<double> zeros(3, 0.0);
    const FadingDraw draw = sample_fading(FadingModel::los_fixed(zeros, zeros), 3, rng);
    REQUIRE(draw.rx.size() == 3);
    REQUIRE(draw.tx.size() == 3);
    for (int i = 0; i < 3; ++i)
    {
        CHECK(draw.rx(i) == std::complex<double>(1.0, 0.0));
        CHECK(draw.tx(i) == std::complex<double>(1.0, 0.0));
    }

    const std::vector<double> short_list(2, 0.0);
    RngStream rng2(7);
    CHECK_THROWS_AS(sample_fading(FadingModel::los_fixed(short_list, short_list), 3, rng2),
                    std::invalid_argument);
}

TEST_CASE("line-of-sight entries always have unit modulus")
{
    RngStream rng = RngStream::substream(11, 0);
    const FadingDraw draw = sample_fading(FadingModel::los(), 16, rng);
    for (int i = 0; i < 16; ++i)
    {
        CHECK(std::abs(std::abs(draw.rx(i)) - 1.0) < 1e-15);
        CHECK(std::abs(std::abs(draw.tx(i)) - 1.0) < 1e-15);
    }
}

TEST_CASE("Rayleigh entries have the first two absolute moments of a unit complex Gaussian")
{
    const int n = 8;
    Accumulator abs_moment;
    Accumulator sq_moment;
    long long samples = 0;
    for (std::uint64_t draw_index = 0; samples < 100000; ++draw_index)
    {
        RngStream rng = RngStream::substream(123, draw_index);
        const FadingDraw draw = sample_fading(FadingModel::rayleigh(), n, rng);
        for (int i = 0; i < n && samples < 100000; ++i, ++samples)
        {
            const double magnitude = std::abs(draw.rx(i));
            abs_moment.add(magnitude);
            sq_moment.add(magnitude * magnitude);
        }
    }
    const double half_sqrt_pi = std::sqrt(M_PI) / 2.0;
    CHECK(std::abs(abs_moment.mean - half_sqrt_pi) <= 3.0 * abs_moment.std_error());
    CHECK(std::abs(sq_moment.mean - 1.0) <= 3.0 * sq_moment.std_error());
}

TEST_CASE("Rician with K = 0 matches Rayleigh in distribution")
{
    const int n = 8;
    std::vector<double> rayleigh_mags, rician_mags;
    for (std::uint64_t d = 0; d < 500; ++d)
    {
        RngStream rng_a = RngStream::substream(2024, d);
        const FadingDraw a = sample_fading(FadingModel::rayleigh(), n, rng_a);
        RngStream rng_b = RngStream::substream(4048, d);
        const FadingDraw b = sample_fading(FadingModel::rician(0.0), n, rng_b);
        for (int i = 0; i < n; ++i)
        {
            rayleigh_mags.push_back(std::abs(a.rx(i)));
            rician_mags.push_back(std::abs(b.rx(i)));
        }
    }
    CHECK(ks_two_sample_p(rayleigh_mags, rician_mags) > 0.01);

    // Negative control: large K concentrates magnitudes near 1, which a
    // Rayleigh sample does not.
    std::vector<double> strong_los_mags;
    for (std::uint64_t d = 0; d < 500; ++d)
    {
        RngStream rng = RngStream::substream(4096, d);
        const FadingDraw b = sample_fading(FadingModel::rician(1e4), n, rng);
        for (int i = 0; i < n; ++i)
            strong_los_mags.push_back(std::abs(b.rx(i)));
    }
    CHECK(ks_two_sample_p(rayleigh_mags, strong_los_mags) < 0.01);
}

TEST_CASE("Rician approaches line-of-sight as K grows")
{
    RngStream rng = RngStream::substream(5, 0);
    const FadingDraw draw = sample_fading(FadingModel::rician(1e10), 64, rng);
    for (int i = 0; i < 64; ++i)
        CHECK(std::abs(std::abs(draw.rx(i)) - 1.0) < 1e-3);
}

TEST_CASE("composition applies the polarization profiles elementwise")
{
    SECTION("chi = 1 leaves the fading untouched, bit for bit")
    {
        SystemConfig config;
        config.n_elements = 8;
        config.chi = 1.0;
        config.rx_pol = Polarization::Horizontal;
        config.fading = FadingModel::rayleigh();

        RngStream rng = RngStream::substream(99, 3);
        const FadingDraw draw = sample_fading(config.fading, config.n_elements, rng);
        const ChannelRealization ch = compose(config, draw);
        for (int i = 0; i < 8; ++i)
        {
            CHECK(ch.h_r(i) == draw.rx(i));
            CHECK(ch.h_t(i) == draw.tx(i));
        }
    }

    SECTION("chi = 0 opposite polarization keeps one half per link")
    {
        SystemConfig config;
        config.n_elements = 2;
        config.chi = 0.0;
        config.tx_pol = Polarization::Vertical;
        config.rx_pol = Polarization::Horizontal;
        const std::vector<double> zeros(2, 0.0);
        config.fading = FadingModel::los_fixed(zeros, zeros);

        RngStream rng(0);
        const ChannelRealization ch = sample_channel(config, rng);
        CHECK(ch.h_r(0) == std::complex<double>(0.0, 0.0));
        CHECK(ch.h_r(1) == std::complex<double>(1.0, 0.0));
        CHECK(ch.h_t(0) == std::complex<double>(1.0, 0.0));
        CHECK(ch.h_t(1) == std::complex<double>(0.0, 0.0));
    }

    SECTION("chi = 0.25 vertical receiver on a zero-phase channel")
    {
        SystemConfig config;
        config.n_elements = 4;
        config.chi = 0.25;
        config.rx_pol = Polarization::Vertical;
        const std::vector<double> zeros(4, 0.0);
        config.fading = FadingModel::los_fixed(zeros, zeros);

        RngStream rng(0);
        const ChannelRealization ch = sample_channel(config, rng);
        CHECK(ch.h_r(0) == std::complex<double>(1.0, 0.0));
        CHECK(ch.h_r(1) == std::complex<double>(1.0, 0.0));
        CHECK(ch.h_r(2) == std::complex<double>(0.5, 0.0));
        CHECK(ch.h_r(3) == std::complex<double>(0.5, 0.0));
    }

    SECTION("length mismatch is rejected")
    {
        SystemConfig config;
        config.n_elements = 4;
        RngStream rng(1);
        const FadingDraw draw = sample_fading(FadingModel::rayleigh(), 6, rng);
        CHECK_THROWS_AS(compose(config, draw), std::invalid_argument);
    }
}

TEST_CASE("composed magnitudes factor into profile times fading magnitude")
{
    SystemConfig config;
    config.n_elements = 16;
    config.chi = 0.37;
    config.tx_pol = Polarization::Horizontal;
    config.rx_pol = Polarization::Vertical;
    config.fading = FadingModel::rayleigh();

    for (std::uint64_t d = 0; d < 25; ++d)
    {
        RngStream rng = RngStream::substream(31, d);
        const ChannelRealization ch = sample_channel(config, rng);
        for (int i = 0; i < 16; ++i)
        {
            const double expected_r = ch.p_r(i) * std::abs(ch.h_tilde_r(i));
            const double expected_t = ch.p_t(i) * std::abs(ch.h_tilde_t(i));
            CHECK(std::abs(ch.h_r(i)) == Catch::Approx(expected_r).epsilon(1e-15));
            CHECK(std::abs(ch.h_t(i)) == Catch::Approx(expected_t).epsilon(1e-15));
        }
    }
}

TEST_CASE("line-of-sight channel norms depend only on N and chi")
{
    SystemConfig config;
    config.n_elements = 16;
    config.chi = 0.3;
    config.tx_pol = Polarization::Vertical;
    config.rx_pol = Polarization::Horizontal;
    config.fading = FadingModel::los();

    const double expected = 16.0 / 2.0 + 0.3 * 16.0 / 2.0;
    for (std::uint64_t d = 0; d < 10; ++d)
    {
        RngStream rng = RngStream::substream(77, d);
        const ChannelRealization ch = sample_channel(config, rng);
        CHECK(ch.h_r.squaredNorm() == Catch::Approx(expected).epsilon(1e-12));
        CHECK(ch.h_t.squaredNorm() == Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("random streams are reproducible and substreams decorrelated")
{
    RngStream a = RngStream::substream(42, 7);
    RngStream b = RngStream::substream(42, 7);
    for (int i = 0; i < 100; ++i)
        CHECK(a.uniform() == b.uniform());

    RngStream c = RngStream::substream(42, 8);
    int equal = 0;
    RngStream a2 = RngStream::substream(42, 7);
    for (int i = 0; i < 100; ++i)
        equal += a2.uniform() == c.uniform() ? 1 : 0;
    CHECK(equal == 0);
}
