// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/snr.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risopt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_continuous_n(double n) {
    if (!(n > 0.0)) {
        throw std::invalid_argument("subarray count must be > 0");
    }
}

void check_powers(double p_data, double noise_power) {
    if (!(p_data > 0.0) || !(noise_power > 0.0)) {
        throw std::invalid_argument("snr: p_data and noise_power must be > 0");
    }
}

/// dD/dN, identical for both variants (they differ by an N-independent term).
double mean_snr_normalized_derivative(const SystemParams& params, double n) {
    const double gain = params.cascaded_gain();
    const double root = std::sqrt(params.rho) + std::sqrt(gain * n);
    return (kPi / 4.0) * root * std::sqrt(gain) / std::sqrt(n);
}

/// d^2 D / dN^2.
double mean_snr_normalized_second_derivative(const SystemParams& params, double n) {
    const double gain = params.cascaded_gain();
    return -(kPi / 8.0) * std::sqrt(gain) * std::sqrt(params.rho) / (n * std::sqrt(n));
}

}  // namespace

const char* to_string(SnrVariant variant) {
    return variant == SnrVariant::exact ? "exact" : "lower_bound";
}

std::optional<SnrVariant> parse_variant(std::string_view text) {
    if (text == "exact") {
        return SnrVariant::exact;
    }
    if (text == "lower_bound") {
        return SnrVariant::lower_bound;
    }
    return std::nullopt;
}

double mean_snr_normalized(const SystemParams& params, double n, SnrVariant variant) {
    check_continuous_n(n);
    const double gain = params.cascaded_gain();
    const double root = std::sqrt(params.rho) + std::sqrt(gain * n);
    const double lower = (kPi / 4.0) * root * root;
    if (variant == SnrVariant::lower_bound) {
        return lower;
    }
    return lower + (1.0 - kPi / 4.0) * (params.rho + gain);
}

double snr_lower_bound(const SystemParams& params, const SubarrayCount& n, double p_data,
                       double noise_power) {
    check_powers(p_data, noise_power);
    return (p_data / noise_power) * mean_snr_normalized(params, n.value(), SnrVariant::lower_bound);
}

double snr_exact(const SystemParams& params, const SubarrayCount& n, double p_data,
                 double noise_power) {
    check_powers(p_data, noise_power);
    return (p_data / noise_power) * mean_snr_normalized(params, n.value(), SnrVariant::exact);
}

double snr_baseline_individual(const SystemParams& params, const SubarrayCount& n, double p_data,
                               double noise_power) {
    check_powers(p_data, noise_power);
    const double count = n.value();
    const double root = std::sqrt(params.rho) + count * std::sqrt(params.alpha * params.beta);
    const double spread = (4.0 / kPi - 1.0) * (params.rho + params.alpha * params.beta * count);
    return (kPi / 4.0) * (p_data / noise_power) * (root * root + spread);
}

double pilot_power(const SystemParams& params, const LinkBudget& link, const SubarrayCount& n) {
    const double gain = params.cascaded_gain();
    if (!(gain > 0.0)) {
        throw std::invalid_argument("pilot_power: alpha*beta*M must be > 0");
    }
    const double count = n.value();
    return link.noise_power * link.gamma_p * count / (gain * (count + 1.0));
}

double data_power(const SystemParams& params, const LinkBudget& link, const SubarrayCount& n,
                  SnrVariant variant) {
    return link.noise_power * link.gamma_d / mean_snr_normalized(params, n.value(), variant);
}

PowerAllocation required_powers(const SystemParams& params, const LinkBudget& link,
                                const SubarrayCount& n, SnrVariant variant) {
    return {pilot_power(params, link, n), data_power(params, link, n, variant)};
}

double energy(const SystemParams& params, const LinkBudget& link, const SubarrayCount& n,
              SnrVariant variant) {
    return energy_continuous(params, link, n.value(), variant);
}

double energy_continuous(const SystemParams& params, const LinkBudget& link, double n,
                         SnrVariant variant) {
    check_continuous_n(n);
    const double data_term = static_cast<double>(link.payload_symbols) / link.symbol_rate *
                             link.noise_power * link.gamma_d / mean_snr_normalized(params, n, variant);
    const double pilot_term =
        n / link.symbol_rate * link.noise_power * link.gamma_p / params.cascaded_gain();
    return data_term + pilot_term;
}

double energy_derivative(const SystemParams& params, const LinkBudget& link, double n,
                         SnrVariant variant) {
    check_continuous_n(n);
    const double gain = params.cascaded_gain();
    const double pilot_slope = link.noise_power * link.gamma_p / (link.symbol_rate * gain);
    const double data_scale =
        link.noise_power * link.gamma_d * static_cast<double>(link.payload_symbols) /
        link.symbol_rate;
    if (variant == SnrVariant::lower_bound) {
        const double root = std::sqrt(params.rho) + std::sqrt(gain * n);
        return pilot_slope -
               data_scale * std::sqrt(gain) / ((kPi / 4.0) * root * root * root * std::sqrt(n));
    }
    const double d = mean_snr_normalized(params, n, SnrVariant::exact);
    return pilot_slope - data_scale * mean_snr_normalized_derivative(params, n) / (d * d);
}

double energy_second_derivative(const SystemParams& params, const LinkBudget& link, double n,
                                SnrVariant variant) {
    check_continuous_n(n);
    const double gain = params.cascaded_gain();
    const double data_scale =
        link.noise_power * link.gamma_d * static_cast<double>(link.payload_symbols) /
        link.symbol_rate;
    if (variant == SnrVariant::lower_bound) {
        const double root = std::sqrt(params.rho) + std::sqrt(gain * n);
        const double numerator =
            std::sqrt(gain) * (std::sqrt(params.rho) + 4.0 * std::sqrt(gain * n));
        const double denominator = (kPi / 2.0) * root * root * root * root * n * std::sqrt(n);
        return data_scale * numerator / denominator;
    }
    const double d = mean_snr_normalized(params, n, SnrVariant::exact);
    const double d1 = mean_snr_normalized_derivative(params, n);
    const double d2 = mean_snr_normalized_second_derivative(params, n);
    return data_scale * (2.0 * d1 * d1 / (d * d * d) - d2 / (d * d));
}

}  // namespace risopt
