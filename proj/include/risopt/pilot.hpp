// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_PILOT_HPP
#define RISOPT_PILOT_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// The (N+1)-point DFT training matrix: entry (r, c) = e^{-j 2 pi r c / (N+1)}.
/// Row r is the RIS configuration during pilot symbol r; row 0 and column 0
/// are all-ones (column 0 carries the direct path). Satisfies
/// conj(Psi)^T Psi = (N+1) I.
class PilotMatrix {
  public:
    explicit PilotMatrix(int n_subarrays);
    explicit PilotMatrix(const SubarrayCount& n) : PilotMatrix(n.value()) {}

    /// Matrix dimension N+1.
    int order() const { return order_; }

    std::complex<double> entry(int row, int col) const {
        return entries_[static_cast<std::size_t>(row) * order_ + col];
    }

    /// Row-major entries.
    const std::vector<std::complex<double>>& entries() const { return entries_; }

  private:
    int order_;
    std::vector<std::complex<double>> entries_;
};

/// Stacks a realization into the coefficient vector h = [p, Z_1, ..., Z_N].
std::vector<std::complex<double>> stack_channel(const ChannelRealization& realization);

/// Received pilot block: y = sqrt(p_pilot) * Psi * h + w, w entries iid
/// CN(0, noise_power). Noise is drawn in row order.
std::vector<std::complex<double>> simulate_pilot_rx(const ChannelRealization& realization,
                                                    const PilotMatrix& psi, double p_pilot,
                                                    double noise_power, Xoshiro256pp& rng);

/// Per-path estimates, ordered like h: [p_hat, Z_hat_1, ..., Z_hat_N].
struct ChannelEstimate {
    std::vector<std::complex<double>> coeffs;
};

/// Least-squares inversion h_hat = conj(Psi)^T y / ((N+1) sqrt(p_pilot)).
/// The estimation error has iid entries CN(0, noise/((N+1) p_pilot)).
ChannelEstimate estimate_channel(std::span<const std::complex<double>> y, const PilotMatrix& psi,
                                 double p_pilot);

/// Pilot SNRs after despreading: (N+1) p_pilot rho / sigma^2 on the direct
/// path and (N+1) p_pilot alpha beta M / (N sigma^2) on the RIS paths.
struct PilotSnr {
    double direct;
    double ris;
};

PilotSnr pilot_snr(const SystemParams& params, const SubarrayCount& n, double p_pilot,
                   double noise_power);

/// The perfect-CSI phase rule applied to the estimate:
/// c_hat_n = arg(Z_hat_n) - arg(p_hat), wrapped to [0, 2*pi).
PhaseConfig phases_from_estimate(const ChannelEstimate& estimate);

struct CsiLossPoint {
    double gamma_p;     ///< RIS-path pilot SNR, linear
    double mean_ratio;  ///< mean achieved/max data-SNR fraction, in (0, 1]
    double std_error;
};

/// Mean relative data-SNR fraction under estimated phases, per pilot-SNR
/// grid point. For each point the pilot power is sized so the RIS-path
/// pilot SNR equals gamma_p; per trial, a fresh realization is estimated
/// and configured with phases_from_estimate, and the achieved/max SNR ratio
/// is averaged. The despread estimation error is injected directly as iid
/// CN(0, alpha*beta*M/(N*gamma_p)) per coefficient, which is the exact
/// distribution the unitary pilot block produces (an infinite gamma_p
/// yields error-free estimates). Deterministic for a fixed seed, any
/// thread count.
std::vector<CsiLossPoint> csi_loss(const SystemParams& params, const SubarrayCount& n,
                                   std::span<const double> gamma_p_grid, long trials,
                                   std::uint64_t seed, int threads = 0);

}  // namespace risopt

#endif  // RISOPT_PILOT_HPP
