// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/pilot.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "risopt/montecarlo.hpp"

namespace risopt {

PilotMatrix::PilotMatrix(int n_subarrays) {
    if (n_subarrays < 1) {
        throw std::invalid_argument("PilotMatrix: need at least one subarray");
    }
    order_ = n_subarrays + 1;
    // One period of twiddles; entry (r, c) = twiddle[(r*c) mod (N+1)].
    std::vector<std::complex<double>> twiddles(static_cast<std::size_t>(order_));
    for (int k = 0; k < order_; ++k) {
        const double angle = -2.0 * std::numbers::pi * k / static_cast<double>(order_);
        twiddles[k] = std::polar(1.0, angle);
    }
    entries_.resize(static_cast<std::size_t>(order_) * order_);
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) {
            const long long index = static_cast<long long>(r) * c % order_;
            entries_[static_cast<std::size_t>(r) * order_ + c] = twiddles[index];
        }
    }
}

std::vector<std::complex<double>> stack_channel(const ChannelRealization& realization) {
    std::vector<std::complex<double>> h;
    h.reserve(realization.subarrays.size() + 1);
    h.push_back(realization.direct);
    h.insert(h.end(), realization.subarrays.begin(), realization.subarrays.end());
    return h;
}

std::vector<std::complex<double>> simulate_pilot_rx(const ChannelRealization& realization,
                                                    const PilotMatrix& psi, double p_pilot,
                                                    double noise_power, Xoshiro256pp& rng) {
    const auto h = stack_channel(realization);
    const int order = psi.order();
    if (static_cast<int>(h.size()) != order) {
        throw std::invalid_argument("simulate_pilot_rx: channel vector does not match pilot matrix");
    }
    const double amplitude = std::sqrt(p_pilot);
    std::vector<std::complex<double>> y(static_cast<std::size_t>(order));
    for (int r = 0; r < order; ++r) {
        double re = 0.0;
        double im = 0.0;
        const auto* row = &psi.entries()[static_cast<std::size_t>(r) * order];
        for (int c = 0; c < order; ++c) {
            re += row[c].real() * h[c].real() - row[c].imag() * h[c].imag();
            im += row[c].real() * h[c].imag() + row[c].imag() * h[c].real();
        }
        y[r] = amplitude * std::complex<double>(re, im) + rng.complex_normal(noise_power);
    }
    return y;
}

ChannelEstimate estimate_channel(std::span<const std::complex<double>> y, const PilotMatrix& psi,
                                 double p_pilot) {
    if (!(p_pilot > 0.0)) {
        throw std::invalid_argument("estimate_channel: p_pilot must be > 0");
    }
    const int order = psi.order();
    if (static_cast<int>(y.size()) != order) {
        throw std::invalid_argument("estimate_channel: observation does not match pilot matrix");
    }
    const double scale = 1.0 / (static_cast<double>(order) * std::sqrt(p_pilot));
    ChannelEstimate estimate;
    estimate.coeffs.resize(static_cast<std::size_t>(order));
    for (int c = 0; c < order; ++c) {
        double re = 0.0;
        double im = 0.0;
        for (int r = 0; r < order; ++r) {
            const auto& w = psi.entry(r, c);  // conj(w) * y[r]
            re += w.real() * y[r].real() + w.imag() * y[r].imag();
            im += w.real() * y[r].imag() - w.imag() * y[r].real();
        }
        estimate.coeffs[c] = scale * std::complex<double>(re, im);
    }
    return estimate;
}

PilotSnr pilot_snr(const SystemParams& params, const SubarrayCount& n, double p_pilot,
                   double noise_power) {
    if (!(p_pilot > 0.0) || !(noise_power > 0.0)) {
        throw std::invalid_argument("pilot_snr: powers must be > 0");
    }
    const double despread = (n.value() + 1.0) * p_pilot / noise_power;
    return {despread * params.rho, despread * params.cascaded_gain() / n.value()};
}

PhaseConfig phases_from_estimate(const ChannelEstimate& estimate) {
    if (estimate.coeffs.empty()) {
        throw std::invalid_argument("phases_from_estimate: empty estimate");
    }
    ChannelRealization as_realization;
    as_realization.direct = estimate.coeffs.front();
    as_realization.subarrays.assign(estimate.coeffs.begin() + 1, estimate.coeffs.end());
    return optimal_phases(as_realization);
}

std::vector<CsiLossPoint> csi_loss(const SystemParams& params, const SubarrayCount& n,
                                   std::span<const double> gamma_p_grid, long trials,
                                   std::uint64_t seed, int threads) {
    if (trials < 1) {
        throw std::invalid_argument("csi_loss: trials must be >= 1");
    }
    std::vector<CsiLossPoint> points;
    points.reserve(gamma_p_grid.size());
    for (std::size_t g = 0; g < gamma_p_grid.size(); ++g) {
        const double gamma_p = gamma_p_grid[g];
        if (!(gamma_p > 0.0)) {
            throw std::invalid_argument("csi_loss: pilot SNRs must be > 0");
        }
        // Error variance per despread coefficient when the pilot power is
        // sized for this RIS-path pilot SNR; infinite SNR means no error.
        const double error_variance =
            std::isinf(gamma_p) ? 0.0 : params.cascaded_gain() / (n.value() * gamma_p);
        const std::uint64_t point_seed = derive_seed(seed, static_cast<std::uint64_t>(g));
        const auto values = mc_values(trials, point_seed, threads, [&](Xoshiro256pp& rng) {
            const auto realization = sample_realization(params, n, rng);
            ChannelEstimate estimate;
            estimate.coeffs.resize(realization.subarrays.size() + 1);
            estimate.coeffs[0] = realization.direct + rng.complex_normal(error_variance);
            for (std::size_t i = 0; i < realization.subarrays.size(); ++i) {
                estimate.coeffs[i + 1] = realization.subarrays[i] + rng.complex_normal(error_variance);
            }
            const auto config = phases_from_estimate(estimate);
            return instantaneous_snr(realization, config, 1.0, 1.0) /
                   max_snr(realization, 1.0, 1.0);
        });
        const auto stats =
            trials >= 2 ? estimate_from_values(values, point_seed)
                        : McEstimate{values.front(), 0.0, 1, point_seed};
        points.push_back({gamma_p, stats.mean, stats.std_error});
    }
    return points;
}

}  // namespace risopt
