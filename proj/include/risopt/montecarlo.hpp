// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_MONTECARLO_HPP
#define RISOPT_MONTECARLO_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "risopt/rng.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Trial budget used throughout for validation sweeps.
inline constexpr long kDefaultTrials = 15000;

/// Confidence-interval multiplier (roughly 99.7% for a Gaussian mean).
inline constexpr double kCiMultiplier = 3.0;

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
};

/// Fixed-shape pairwise summation; deterministic regardless of how the
/// values were produced, and far more accurate than a running sum.
double pairwise_sum(std::span<const double> values);

namespace detail {

int resolve_threads(int threads, long trials);

template <typename TrialFn>
void fill_trials(std::vector<double>& values, std::uint64_t seed, int threads, TrialFn& fn) {
    const long trials = static_cast<long>(values.size());
    const int workers = resolve_threads(threads, trials);
    if (workers <= 1) {
        for (long i = 0; i < trials; ++i) {
            Xoshiro256pp rng = Xoshiro256pp::substream(seed, static_cast<std::uint64_t>(i));
            values[static_cast<std::size_t>(i)] = fn(rng);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long begin = static_cast<long>(w) * chunk;
        const long end = std::min(trials, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&values, &fn, seed, begin, end] {
            for (long i = begin; i < end; ++i) {
                Xoshiro256pp rng = Xoshiro256pp::substream(seed, static_cast<std::uint64_t>(i));
                values[static_cast<std::size_t>(i)] = fn(rng);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace detail

/// Evaluates fn once per trial on substream (seed, trial index). Per-trial
/// values land in fixed slots and the reduction runs in a fixed order, so
/// the result is byte-identical for any worker count.
template <typename TrialFn>
std::vector<double> mc_values(long trials, std::uint64_t seed, int threads, TrialFn fn) {
    if (trials < 1) {
        throw std::invalid_argument("mc_values: trials must be >= 1");
    }
    std::vector<double> values(static_cast<std::size_t>(trials));
    detail::fill_trials(values, seed, threads, fn);
    return values;
}

/// Mean and standard error of the per-trial values.
McEstimate estimate_from_values(std::span<const double> values, std::uint64_t seed);

template <typename TrialFn>
McEstimate mc_estimate(long trials, std::uint64_t seed, int threads, TrialFn fn) {
    if (trials < 2) {
        throw std::invalid_argument("mc_estimate: trials must be >= 2");
    }
    const auto values = mc_values(trials, seed, threads, std::move(fn));
    return estimate_from_values(values, seed);
}

/// Monte Carlo mean of the maximal data SNR over independent realizations.
/// threads <= 0 picks the hardware thread count; the estimate does not
/// depend on the choice.
McEstimate mc_mean_max_snr(const SystemParams& params, const SubarrayCount& n, double p_data,
                           double noise_power, long trials, std::uint64_t seed, int threads = 0);

/// Same, for the baseline with N individually phased elements and the
/// remaining M - N turned off (each active element channel is CN(0, alpha*beta)).
McEstimate mc_mean_baseline_snr(const SystemParams& params, const SubarrayCount& n, double p_data,
                                double noise_power, long trials, std::uint64_t seed,
                                int threads = 0);

/// Outcome of checking a closed-form value against a Monte Carlo estimate.
/// Passes when the deviation is within rel_tol of the analytic value or
/// within kCiMultiplier standard errors, whichever is looser.
struct CompareReport {
    bool pass = false;
    double analytic = 0.0;
    double mc_mean = 0.0;
    double abs_error = 0.0;
    double rel_margin = 0.0;  ///< rel_tol * |analytic|
    double se_margin = 0.0;   ///< kCiMultiplier * std_error
};

CompareReport compare(double analytic, const McEstimate& estimate, double rel_tol);

}  // namespace risopt

#endif  // RISOPT_MONTECARLO_HPP
