// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_EXPERIMENT_HPP
#define RISOPT_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risopt/snr.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// One experiment setup as read from a flat key = value config file.
/// Decibel fields are converted to linear units on ingestion.
struct ExperimentConfig {
    double alpha_db = 0.0;
    double beta_db = 0.0;
    double rho_db = 0.0;
    int m_elements = 0;
    double noise_dbm = 0.0;
    double symbol_rate_hz = 0.0;
    double gamma_p_db = 0.0;
    double gamma_d_db = 0.0;
    long payload_symbols = 0;
    std::uint64_t seed = 0;
    long trials = 0;
    SnrVariant variant = SnrVariant::exact;

    /// Transmit SNR P_data/sigma^2 for the fixed-power SNR sweep; only the
    /// snr-vs-n subcommand consumes it.
    std::optional<double> tx_snr_db;

    // Pilot-SNR grid for csi-loss; defaults cover the informative range.
    double csi_grid_min_db = -20.0;
    double csi_grid_max_db = 40.0;
    double csi_grid_step_db = 2.0;

    SystemParams system_params() const;
    LinkBudget link_budget() const;
};

/// Parses and validates a config file. On failure returns nullopt and one
/// message per offending key in `errors`.
std::optional<ExperimentConfig> load_config(const std::string& path,
                                            std::vector<std::string>& errors);

/// Full CLI entry point (argv without the program name). Subcommands:
/// snr-vs-n, csi-loss, power-tradeoff, energy-vs-n, optimize. Returns 0 on
/// success, 2 on config validation failure, 3 on unwritable output.
int execute(const std::vector<std::string>& args);

}  // namespace risopt

#endif  // RISOPT_EXPERIMENT_HPP
