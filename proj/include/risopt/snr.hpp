// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_SNR_HPP
#define RISOPT_SNR_HPP

#include <optional>
#include <string_view>

#include "risopt/system_model.hpp"

namespace risopt {

/// Which mean-SNR expression backs power sizing and the energy objective:
/// the exact average of the maximal SNR, or its Jensen lower bound.
enum class SnrVariant { exact, lower_bound };

const char* to_string(SnrVariant variant);
std::optional<SnrVariant> parse_variant(std::string_view text);

/// Transmit powers required to hit the pilot and data SNR targets.
struct PowerAllocation {
    double p_pilot;  ///< watts
    double p_data;   ///< watts
};

/// D(N): mean maximal SNR per unit transmit SNR (E{SNR} * sigma^2/P_data) on
/// the continuous relaxation N > 0.
///   lower_bound: (pi/4) (sqrt(rho) + sqrt(alpha beta M N))^2
///   exact:       lower_bound + (1 - pi/4)(rho + alpha beta M)
double mean_snr_normalized(const SystemParams& params, double n, SnrVariant variant);

/// Jensen lower bound on the mean maximal data SNR.
double snr_lower_bound(const SystemParams& params, const SubarrayCount& n, double p_data,
                       double noise_power);

/// Exact mean maximal data SNR with an optimized RIS configuration.
double snr_exact(const SystemParams& params, const SubarrayCount& n, double p_data,
                 double noise_power);

/// Mean maximal data SNR of the baseline that configures N elements
/// individually and turns the remaining M - N off.
double snr_baseline_individual(const SystemParams& params, const SubarrayCount& n, double p_data,
                               double noise_power);

/// Pilot power that makes the RIS-path pilot SNR equal gamma_p:
/// sigma^2 gamma_p N / (alpha beta M (N+1)).
double pilot_power(const SystemParams& params, const LinkBudget& link, const SubarrayCount& n);

/// Data power that makes the variant's mean SNR equal gamma_d:
/// sigma^2 gamma_d / D(N).
double data_power(const SystemParams& params, const LinkBudget& link, const SubarrayCount& n,
                  SnrVariant variant);

PowerAllocation required_powers(const SystemParams& params, const LinkBudget& link,
                                const SubarrayCount& n, SnrVariant variant);

/// UE energy to send N+1 pilots and L data symbols at the required powers:
/// E(N) = (L/B) sigma^2 gamma_d / D(N) + (N/B) sigma^2 gamma_p / (alpha beta M).
double energy(const SystemParams& params, const LinkBudget& link, const SubarrayCount& n,
              SnrVariant variant);

/// E(N) on the continuous relaxation, n > 0.
double energy_continuous(const SystemParams& params, const LinkBudget& link, double n,
                         SnrVariant variant);

/// dE/dN on the continuous relaxation, n > 0. Rejects n <= 0.
double energy_derivative(const SystemParams& params, const LinkBudget& link, double n,
                         SnrVariant variant);

/// d^2E/dN^2 on the continuous relaxation, n > 0; positive for all n > 0.
double energy_second_derivative(const SystemParams& params, const LinkBudget& link, double n,
                                SnrVariant variant);

}  // namespace risopt

#endif  // RISOPT_SNR_HPP
