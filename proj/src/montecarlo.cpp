// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "risopt/channel.hpp"

namespace risopt {

namespace detail {

int resolve_threads(int threads, long trials) {
    int workers = threads;
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) {
            workers = 1;
        }
    }
    return static_cast<int>(std::min<long>(workers, trials));
}

}  // namespace detail

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 32) {
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        return sum;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

McEstimate estimate_from_values(std::span<const double> values, std::uint64_t seed) {
    const long trials = static_cast<long>(values.size());
    const double mean = pairwise_sum(values) / static_cast<double>(trials);
    std::vector<double> squared(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean;
        squared[i] = d * d;
    }
    const double variance = pairwise_sum(squared) / static_cast<double>(trials - 1);
    return {mean, std::sqrt(variance / static_cast<double>(trials)), trials, seed};
}

McEstimate mc_mean_max_snr(const SystemParams& params, const SubarrayCount& n, double p_data,
                           double noise_power, long trials, std::uint64_t seed, int threads) {
    if (trials < 2) {
        throw std::invalid_argument("mc_mean_max_snr: trials must be >= 2");
    }
    return mc_estimate(trials, seed, threads, [&](Xoshiro256pp& rng) {
        const auto realization = sample_realization(params, n, rng);
        return max_snr(realization, p_data, noise_power);
    });
}

McEstimate mc_mean_baseline_snr(const SystemParams& params, const SubarrayCount& n, double p_data,
                                double noise_power, long trials, std::uint64_t seed, int threads) {
    if (trials < 2) {
        throw std::invalid_argument("mc_mean_baseline_snr: trials must be >= 2");
    }
    const double element_variance = params.alpha * params.beta;
    const int active = n.value();
    return mc_estimate(trials, seed, threads, [&, element_variance, active](Xoshiro256pp& rng) {
        double magnitude_sum = std::abs(rng.complex_normal(params.rho));
        for (int i = 0; i < active; ++i) {
            magnitude_sum += std::abs(rng.complex_normal(element_variance));
        }
        return (p_data / noise_power) * magnitude_sum * magnitude_sum;
    });
}

CompareReport compare(double analytic, const McEstimate& estimate, double rel_tol) {
    if (!(rel_tol > 0.0)) {
        throw std::invalid_argument("compare: rel_tol must be > 0");
    }
    CompareReport report;
    report.analytic = analytic;
    report.mc_mean = estimate.mean;
    report.abs_error = std::abs(analytic - estimate.mean);
    report.rel_margin = rel_tol * std::abs(analytic);
    report.se_margin = kCiMultiplier * estimate.std_error;
    report.pass = report.abs_error <= std::max(report.rel_margin, report.se_margin);
    return report;
}

}  // namespace risopt
