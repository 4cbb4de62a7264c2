// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_CHANNEL_HPP
#define RISOPT_CHANNEL_HPP

#include <complex>
#include <utility>
#include <vector>

#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// One draw of the end-to-end channel: the direct path p and the aggregated
/// per-subarray channels Z_1..Z_N, each Z_n ~ CN(0, alpha*beta*M/N).
struct ChannelRealization {
    std::complex<double> direct;
    std::vector<std::complex<double>> subarrays;
};

/// Raw per-element channels, block-major: element i of subarray n sits at
/// index n*(M/N)+i. phases holds the LoS reflection phase of each element's
/// RIS-BS path, fading the UE-to-element Rayleigh coefficient.
struct ElementChannels {
    std::vector<double> phases;
    std::vector<std::complex<double>> fading;
};

/// RIS configuration: reflection phase c_n per subarray, each in [0, 2*pi).
struct PhaseConfig {
    std::vector<double> phases;
};

/// Draws p ~ CN(0, rho) followed by Z_1..Z_N ~ CN(0, alpha*beta*M/N), all
/// mutually independent. Draw order is fixed (direct first, then subarrays
/// ascending) so results are a pure function of the stream state.
ChannelRealization sample_realization(const SystemParams& params, const SubarrayCount& n,
                                      Xoshiro256pp& rng);

/// Draws every element channel individually (phase uniform on [0, 2*pi),
/// fading CN(0, beta), phase before fading per element, elements in
/// block-major order after the direct path) and aggregates each block into
/// its subarray channel. The realization's Z_n equals the blockwise sum
/// sqrt(alpha)*e^{-j*phi}*b accumulated in element order, bit for bit.
std::pair<ChannelRealization, ElementChannels> sample_realization_elementwise(
    const SystemParams& params, const SubarrayCount& n, Xoshiro256pp& rng);

/// SNR-maximizing configuration c_n = arg(Z_n) - arg(p), wrapped to
/// [0, 2*pi). arg(0) is taken as 0 so a blocked direct path still co-phases
/// every reflected path.
PhaseConfig optimal_phases(const ChannelRealization& realization);

/// (p_data/noise) * |p + sum_n Z_n e^{-j c_n}|^2 for a given configuration.
double instantaneous_snr(const ChannelRealization& realization, const PhaseConfig& config,
                         double p_data, double noise_power);

/// (p_data/noise) * (|p| + sum_n |Z_n|)^2, the maximum over configurations.
double max_snr(const ChannelRealization& realization, double p_data, double noise_power);

}  // namespace risopt

#endif  // RISOPT_CHANNEL_HPP
