// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risopt {

namespace {

std::map<int, double> evaluate_curve(const SystemParams& params, const LinkBudget& link,
                                     SnrVariant variant) {
    std::map<int, double> curve;
    for (const auto& n : feasible_subarray_counts(params.m_elements)) {
        curve.emplace(n.value(), energy(params, link, n, variant));
    }
    return curve;
}

}  // namespace

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::interior:
            return "interior";
        case Regime::all_individual:
            return "all_individual";
        case Regime::single_subarray:
            return "single_subarray";
    }
    return "unknown";
}

Regime classify_regime(const SystemParams& params, const LinkBudget& link, SnrVariant variant) {
    validate(params, link);
    const double slope_at_one = energy_derivative(params, link, 1.0, variant);
    if (slope_at_one >= 0.0) {
        return Regime::single_subarray;
    }
    const double slope_at_m =
        energy_derivative(params, link, static_cast<double>(params.m_elements), variant);
    if (slope_at_m <= 0.0) {
        return Regime::all_individual;
    }
    return Regime::interior;
}

bool energy_slope_negative_at_one(const SystemParams& params, const LinkBudget& link) {
    const double lhs = std::sqrt(params.rho / params.cascaded_gain());
    const double rhs = std::cbrt(4.0 * link.gamma_d * static_cast<double>(link.payload_symbols) /
                                 (std::numbers::pi * link.gamma_p)) -
                       1.0;
    return lhs < rhs;
}

bool energy_slope_positive_at_m(const SystemParams& params, const LinkBudget& link) {
    const double sqrt_m = std::sqrt(static_cast<double>(params.m_elements));
    const double lhs = std::sqrt(params.rho / params.cascaded_gain());
    const double rhs = std::cbrt(4.0 * link.gamma_d * static_cast<double>(link.payload_symbols) /
                                 (std::numbers::pi * link.gamma_p * sqrt_m)) -
                       sqrt_m;
    return lhs > rhs;
}

double continuous_optimum(const SystemParams& params, const LinkBudget& link, SnrVariant variant) {
    const Regime regime = classify_regime(params, link, variant);
    if (regime != Regime::interior) {
        throw std::logic_error(std::string("continuous_optimum: no interior root, regime is ") +
                               to_string(regime));
    }
    // Classification established E'(1) < 0 < E'(M); bisect the sign change.
    double lo = 1.0;
    double hi = static_cast<double>(params.m_elements);
    const double width_target = 1e-9 * hi;
    for (int iteration = 0; iteration < 200 && hi - lo > width_target; ++iteration) {
        const double mid = 0.5 * (lo + hi);
        if (energy_derivative(params, link, mid, variant) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

OptimizationResult optimize_subarrays(const SystemParams& params, const LinkBudget& link,
                                      SnrVariant variant) {
    const Regime regime = classify_regime(params, link, variant);
    auto curve = evaluate_curve(params, link, variant);

    int best = 1;
    std::optional<double> n_continuous;
    switch (regime) {
        case Regime::single_subarray:
            best = 1;
            break;
        case Regime::all_individual:
            best = params.m_elements;
            break;
        case Regime::interior: {
            const double root = continuous_optimum(params, link, variant);
            n_continuous = root;
            // Closest feasible values on either side of the root.
            auto above = curve.lower_bound(static_cast<int>(std::ceil(root)));
            if (above == curve.end()) {
                --above;
            }
            auto below = above == curve.begin() ? above : std::prev(above);
            best = below->second <= above->second ? below->first : above->first;
            break;
        }
    }

    return {regime,
            n_continuous,
            SubarrayCount(best, params.m_elements),
            curve.at(best),
            std::move(curve),
            variant};
}

OptimizationResult brute_force_optimum(const SystemParams& params, const LinkBudget& link,
                                       SnrVariant variant) {
    const Regime regime = classify_regime(params, link, variant);
    auto curve = evaluate_curve(params, link, variant);
    auto best = curve.begin();
    for (auto it = curve.begin(); it != curve.end(); ++it) {
        if (it->second < best->second) {
            best = it;
        }
    }
    return {regime,
            std::nullopt,
            SubarrayCount(best->first, params.m_elements),
            best->second,
            std::move(curve),
            variant};
}

}  // namespace risopt
