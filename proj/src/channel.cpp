// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risopt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_powers(double p_data, double noise_power) {
    if (!(p_data > 0.0) || !(noise_power > 0.0)) {
        throw std::invalid_argument("snr: p_data and noise_power must be > 0");
    }
}

}  // namespace

ChannelRealization sample_realization(const SystemParams& params, const SubarrayCount& n,
                                      Xoshiro256pp& rng) {
    const int count = n.value();
    const double subarray_variance = params.cascaded_gain() / static_cast<double>(count);
    ChannelRealization realization;
    realization.direct = rng.complex_normal(params.rho);
    realization.subarrays.resize(count);
    for (int i = 0; i < count; ++i) {
        realization.subarrays[i] = rng.complex_normal(subarray_variance);
    }
    return realization;
}

std::pair<ChannelRealization, ElementChannels> sample_realization_elementwise(
    const SystemParams& params, const SubarrayCount& n, Xoshiro256pp& rng) {
    const int count = n.value();
    const int block = n.elements_per_subarray();
    const int m = n.m_elements();
    const double sqrt_alpha = std::sqrt(params.alpha);

    ChannelRealization realization;
    realization.direct = rng.complex_normal(params.rho);
    realization.subarrays.resize(count);

    ElementChannels elements;
    elements.phases.resize(m);
    elements.fading.resize(m);

    for (int sub = 0; sub < count; ++sub) {
        std::complex<double> aggregate = 0.0;
        for (int i = 0; i < block; ++i) {
            const int k = sub * block + i;
            elements.phases[k] = rng.uniform_phase();
            elements.fading[k] = rng.complex_normal(params.beta);
            aggregate += sqrt_alpha * std::polar(1.0, -elements.phases[k]) * elements.fading[k];
        }
        realization.subarrays[sub] = aggregate;
    }
    return {std::move(realization), std::move(elements)};
}

PhaseConfig optimal_phases(const ChannelRealization& realization) {
    const std::complex<double> zero{0.0, 0.0};
    const double arg_direct = realization.direct == zero ? 0.0 : std::arg(realization.direct);
    PhaseConfig config;
    config.phases.reserve(realization.subarrays.size());
    for (const auto& z : realization.subarrays) {
        const double arg_z = z == zero ? 0.0 : std::arg(z);
        double c = arg_z - arg_direct;
        c = std::fmod(c, kTwoPi);
        if (c < 0.0) {
            c += kTwoPi;
        }
        if (c >= kTwoPi) {
            c -= kTwoPi;
        }
        config.phases.push_back(c);
    }
    return config;
}

double instantaneous_snr(const ChannelRealization& realization, const PhaseConfig& config,
                         double p_data, double noise_power) {
    check_powers(p_data, noise_power);
    if (config.phases.size() != realization.subarrays.size()) {
        throw std::invalid_argument("instantaneous_snr: config/realization size mismatch");
    }
    double re = realization.direct.real();
    double im = realization.direct.imag();
    for (std::size_t i = 0; i < config.phases.size(); ++i) {
        const double c = std::cos(config.phases[i]);
        const double s = -std::sin(config.phases[i]);
        const auto& z = realization.subarrays[i];
        re += z.real() * c - z.imag() * s;
        im += z.real() * s + z.imag() * c;
    }
    return (p_data / noise_power) * (re * re + im * im);
}

double max_snr(const ChannelRealization& realization, double p_data, double noise_power) {
    check_powers(p_data, noise_power);
    double magnitude_sum = std::abs(realization.direct);
    for (const auto& z : realization.subarrays) {
        magnitude_sum += std::abs(z);
    }
    return (p_data / noise_power) * magnitude_sum * magnitude_sum;
}

}  // namespace risopt
