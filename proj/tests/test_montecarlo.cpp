// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/montecarlo.hpp"
#include "risopt/rng.hpp"
#include "risopt/snr.hpp"
#include "risopt/system_model.hpp"
#include "testutil.hpp"

using namespace risopt;

namespace {

SystemParams reference_params() {
    return {db_to_linear(-80.0), db_to_linear(-60.0), db_to_linear(-95.0), 1024};
}

const double kTxSnr = db_to_linear(104.0);

bool same_bits(const McEstimate& a, const McEstimate& b) {
    return std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0 &&
           std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0 && a.trials == b.trials &&
           a.seed == b.seed;
}

}  // namespace

TEST_CASE("pairwise sum matches plain summation") {
    Xoshiro256pp rng(1);
    std::vector<double> values(1237);
    long double reference = 0.0L;
    for (auto& v : values) {
        v = rng.uniform() - 0.5;
        reference += v;
    }
    CHECK(std::abs(pairwise_sum(values) - static_cast<double>(reference)) < 1e-12);
}

TEST_CASE("direct-path-only scene estimates rho") {
    // Degenerate scene: no reflected energy at all, so the mean maximal SNR
    // collapses to (p/noise) * E{|p|^2} = (p/noise) * rho.
    SystemParams params{1e-8, 0.0, 1e-9, 16};
    const auto estimate =
        mc_mean_max_snr(params, SubarrayCount(4, 16), 2.0, 1.0, 20000, 21);
    const double expected = 2.0 * params.rho;
    CHECK(std::abs(estimate.mean - expected) < 3.0 * estimate.std_error);
}

TEST_CASE("mean max SNR matches the closed form at N = 16") {
    const auto params = reference_params();
    const SubarrayCount n(16, 1024);
    const auto estimate = mc_mean_max_snr(params, n, kTxSnr, 1.0, kDefaultTrials, 22);
    const double analytic = snr_exact(params, n, kTxSnr, 1.0);
    CHECK(testutil::rel_error(estimate.mean, analytic) < 0.01);
    CHECK(estimate.trials == kDefaultTrials);
    CHECK_THROWS_AS(mc_mean_max_snr(params, n, kTxSnr, 1.0, 1, 22), std::invalid_argument);
}

TEST_CASE("doubling the trials shrinks the standard error by sqrt(2)") {
    const auto params = reference_params();
    const SubarrayCount n(16, 1024);
    const auto half = mc_mean_max_snr(params, n, kTxSnr, 1.0, 15000, 23);
    const auto full = mc_mean_max_snr(params, n, kTxSnr, 1.0, 30000, 23);
    CHECK(std::abs(full.std_error / half.std_error * std::numbers::sqrt2 - 1.0) < 0.1);
}

TEST_CASE("baseline estimator: equality at N = M, gap below") {
    const auto params = reference_params();
    SUBCASE("indistinguishable from the subarray estimator at N = M") {
        const SubarrayCount n(1024, 1024);
        const auto subarrays = mc_mean_max_snr(params, n, kTxSnr, 1.0, kDefaultTrials, 24);
        const auto baseline = mc_mean_baseline_snr(params, n, kTxSnr, 1.0, kDefaultTrials, 25);
        const double combined = std::hypot(subarrays.std_error, baseline.std_error);
        CHECK(std::abs(subarrays.mean - baseline.mean) < 3.0 * combined);
    }
    SUBCASE("anchor at N = 1") {
        const auto estimate =
            mc_mean_baseline_snr(params, SubarrayCount(1, 1024), kTxSnr, 1.0, kDefaultTrials, 33);
        CHECK(testutil::rel_error(estimate.mean, 8.014) < 0.015);
    }
    SUBCASE("strictly below the subarray estimator at N = 64") {
        const SubarrayCount n(64, 1024);
        const auto subarrays = mc_mean_max_snr(params, n, kTxSnr, 1.0, kDefaultTrials, 27);
        const auto baseline = mc_mean_baseline_snr(params, n, kTxSnr, 1.0, kDefaultTrials, 28);
        const double combined = std::hypot(subarrays.std_error, baseline.std_error);
        CHECK(subarrays.mean - baseline.mean > 3.0 * combined);
    }
}

TEST_CASE("compare: contract cases") {
    McEstimate estimate{100.0, 1.0, 1000, 0};
    SUBCASE("exact agreement passes") {
        const auto report = compare(100.0, estimate, 0.01);
        CHECK(report.pass);
        CHECK(report.abs_error == 0.0);
        CHECK(report.rel_margin == doctest::Approx(1.0));
        CHECK(report.se_margin == doctest::Approx(3.0));
    }
    SUBCASE("outside both margins fails, margins reported") {
        const auto report = compare(110.0, estimate, 0.01);
        CHECK_FALSE(report.pass);
        CHECK(report.abs_error == doctest::Approx(10.0));
        CHECK(report.rel_margin == doctest::Approx(1.1));
        CHECK(report.se_margin == doctest::Approx(3.0));
    }
    SUBCASE("rel_tol must be positive") {
        CHECK_THROWS_AS(compare(1.0, estimate, 0.0), std::invalid_argument);
    }
}

TEST_CASE("closed form versus Monte Carlo across the whole divisor lattice") {
    const auto params = reference_params();
    for (const auto& n : feasible_subarray_counts(1024)) {
        const auto estimate = mc_mean_max_snr(params, n, kTxSnr, 1.0, kDefaultTrials,
                                              derive_seed(29, n.value()));
        const auto report = compare(snr_exact(params, n, kTxSnr, 1.0), estimate, 0.01);
        CHECK(report.pass);
    }
}

TEST_CASE("closed form versus Monte Carlo on distinct scenes") {
    struct Scene {
        SystemParams params;
        int n;
        double tx_snr_db;
    };
    const Scene scenes[] = {
        {{db_to_linear(-80.0), db_to_linear(-60.0), db_to_linear(-95.0), 1024}, 32, 104.0},
        {{db_to_linear(-70.0), db_to_linear(-65.0), db_to_linear(-85.0), 256}, 16, 90.0},
        {{db_to_linear(-90.0), db_to_linear(-55.0), db_to_linear(-110.0), 4096}, 64, 110.0},
    };
    std::uint64_t seed = 34;
    for (const auto& scene : scenes) {
        const SubarrayCount n(scene.n, scene.params.m_elements);
        const double tx = db_to_linear(scene.tx_snr_db);
        const auto estimate = mc_mean_max_snr(scene.params, n, tx, 1.0, kDefaultTrials, seed++);
        const auto report = compare(snr_exact(scene.params, n, tx, 1.0), estimate, 0.01);
        CHECK(report.pass);
    }
}

TEST_CASE("estimates are byte-identical across worker thread counts") {
    const auto params = reference_params();
    const SubarrayCount n(32, 1024);
    const auto one = mc_mean_max_snr(params, n, kTxSnr, 1.0, 5000, 30, 1);
    const auto four = mc_mean_max_snr(params, n, kTxSnr, 1.0, 5000, 30, 4);
    const auto sixteen = mc_mean_max_snr(params, n, kTxSnr, 1.0, 5000, 30, 16);
    CHECK(same_bits(one, four));
    CHECK(same_bits(one, sixteen));

    const auto base_one = mc_mean_baseline_snr(params, n, kTxSnr, 1.0, 5000, 31, 1);
    const auto base_16 = mc_mean_baseline_snr(params, n, kTxSnr, 1.0, 5000, 31, 16);
    CHECK(same_bits(base_one, base_16));
}

TEST_CASE("per-trial substreams show no serial correlation") {
    const auto params = reference_params();
    const SubarrayCount n(16, 1024);
    const long trials = 20000;
    const auto values = mc_values(trials, 32, 0, [&](Xoshiro256pp& rng) {
        return max_snr(sample_realization(params, n, rng), kTxSnr, 1.0);
    });
    const auto stats = testutil::mean_se(values);
    double num = 0.0;
    double den = 0.0;
    for (long i = 0; i < trials; ++i) {
        const double d = values[i] - stats.mean;
        den += d * d;
        if (i + 1 < trials) {
            num += d * (values[i + 1] - stats.mean);
        }
    }
    const double lag1 = num / den;
    CHECK(std::abs(lag1) < 3.0 / std::sqrt(static_cast<double>(trials)));
}
