// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_OPTIMIZER_HPP
#define RISOPT_OPTIMIZER_HPP

#include <map>
#include <optional>

#include "risopt/snr.hpp"
#include "risopt/system_model.hpp"

namespace risopt {

/// Where the energy minimum sits, read off the endpoint slopes of the
/// convex objective: an interior root of E', all elements individually
/// configured (N = M), or everything bundled into one subarray (N = 1).
enum class Regime { interior, all_individual, single_subarray };

const char* to_string(Regime regime);

struct OptimizationResult {
    Regime regime;
    std::optional<double> n_continuous;  ///< root of E'; set only when interior
    SubarrayCount n_optimal;
    double energy_at_optimum;            ///< joules
    std::map<int, double> energy_curve;  ///< E(N) at every feasible N
    SnrVariant variant;
};

/// Classifies by the signs of E'(1) and E'(M). A slope of exactly zero at
/// an endpoint resolves to the regime that makes that endpoint the optimum.
Regime classify_regime(const SystemParams& params, const LinkBudget& link, SnrVariant variant);

/// Closed-form endpoint tests for the lower-bound objective:
/// E'(1) < 0 iff sqrt(rho/(alpha beta M)) < (4 gamma_d L / (pi gamma_p))^{1/3} - 1.
bool energy_slope_negative_at_one(const SystemParams& params, const LinkBudget& link);

/// E'(M) > 0 iff sqrt(rho/(alpha beta M)) > (4 gamma_d L / (pi gamma_p sqrt(M)))^{1/3} - sqrt(M).
bool energy_slope_positive_at_m(const SystemParams& params, const LinkBudget& link);

/// Unique positive root of E'(N) = 0 by bisection on [1, M]. Only valid in
/// the interior regime; throws otherwise, naming the actual regime.
/// Converges to a bracket width below 1e-9 * M (at most 200 iterations).
double continuous_optimum(const SystemParams& params, const LinkBudget& link, SnrVariant variant);

/// Minimizes E(N) over the feasible divisors of M: endpoint regimes pick
/// N = 1 or N = M outright; the interior regime bisects for the continuous
/// root and evaluates the closest smaller and larger divisors. Ties go to
/// the smaller N.
OptimizationResult optimize_subarrays(const SystemParams& params, const LinkBudget& link,
                                      SnrVariant variant);

/// Reference scan of E(N) over every divisor of M; ties go to the smaller N.
OptimizationResult brute_force_optimum(const SystemParams& params, const LinkBudget& link,
                                       SnrVariant variant);

}  // namespace risopt

#endif  // RISOPT_OPTIMIZER_HPP
