// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "risopt/experiment.hpp"
#include "testutil.hpp"

using namespace risopt;
namespace fs = std::filesystem;

namespace {

class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
        root_ = fs::temp_directory_path() /
                ("risopt-test-" + std::to_string(stamp) + "-" + std::to_string(counter++));
        fs::create_directories(root_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }
    std::string path(const std::string& name) const { return (root_ / name).string(); }

  private:
    fs::path root_;
};

std::string write_file(const TempDir& dir, const std::string& name, const std::string& text) {
    const std::string path = dir.path(name);
    std::ofstream file(path);
    file << text;
    return path;
}

const char* kSnrSweepConfig =
    "# reference scene\n"
    "alpha_db = -80\n"
    "beta_db = -60\n"
    "rho_db = -95\n"
    "m_elements = 1024\n"
    "noise_dbm = 30   # sigma^2 = 1 W\n"
    "symbol_rate_hz = 1\n"
    "gamma_p_db = 20\n"
    "gamma_d_db = 20\n"
    "payload_symbols = 200\n"
    "seed = 7\n"
    "trials = 200\n"
    "variant = exact\n"
    "tx_snr_db = 104\n";

const char* kStrongDirectConfig =
    "alpha_db = -80\n"
    "beta_db = -60\n"
    "rho_db = -90\n"
    "m_elements = 1024\n"
    "noise_dbm = 30\n"
    "symbol_rate_hz = 1\n"
    "gamma_p_db = 20\n"
    "gamma_d_db = 20\n"
    "payload_symbols = 200\n"
    "seed = 7\n"
    "trials = 200\n"
    "variant = exact\n";

const char* kSmallConfig =
    "alpha_db = -80\n"
    "beta_db = -60\n"
    "rho_db = -95\n"
    "m_elements = 64\n"
    "noise_dbm = 30\n"
    "symbol_rate_hz = 1\n"
    "gamma_p_db = 20\n"
    "gamma_d_db = 20\n"
    "payload_symbols = 500\n"
    "seed = 3\n"
    "trials = 200\n"
    "variant = exact\n"
    "tx_snr_db = 104\n";

}  // namespace

TEST_CASE("snr-vs-n: row layout and anchored endpoint") {
    TempDir dir;
    const auto config = write_file(dir, "sweep.cfg", kSnrSweepConfig);
    const auto out = dir.path("snr.csv");
    REQUIRE(execute({"snr-vs-n", "--config", config, "--out", out}) == 0);

    const auto rows = testutil::parse_csv(testutil::slurp(out));
    REQUIRE(rows.size() == 12);  // header + 11 divisors
    CHECK(rows.front() ==
          std::vector<std::string>{"n", "snr_exact_db", "snr_lower_bound_db", "snr_baseline_db",
                                   "snr_mc_db", "mc_std_error"});
    const auto& last = rows.back();
    CHECK(last[0] == "1024");
    CHECK(std::abs(std::stod(last[1]) - 24.57) < 0.05);

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double exact_db = std::stod(rows[i][1]);
        const double baseline_db = std::stod(rows[i][3]);
        if (rows[i][0] == "1024") {
            CHECK(std::abs(baseline_db - exact_db) < 1e-6);
        } else {
            CHECK(baseline_db < exact_db - 1e-6);
        }
    }
}

TEST_CASE("csi-loss: grid layout") {
    TempDir dir;
    const auto config = write_file(dir, "small.cfg", kSmallConfig);
    const auto out = dir.path("csi.csv");
    REQUIRE(execute({"csi-loss", "--config", config, "--out", out}) == 0);

    const auto rows = testutil::parse_csv(testutil::slurp(out));
    REQUIRE(rows.size() == 32);  // header + 31 grid points (-20..40 dB step 2)
    CHECK(rows.front() == std::vector<std::string>{"gamma_p_db", "mean_ratio", "std_error"});
    CHECK(rows[1][0] == "-20");
    CHECK(rows.back()[0] == "40");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double ratio = std::stod(rows[i][1]);
        CHECK(ratio > 0.0);
        CHECK(ratio <= 1.0);
    }
    // high pilot SNR end sits near perfect CSI
    CHECK(std::stod(rows.back()[1]) > 0.95);
}

TEST_CASE("power-tradeoff: marks the energy-optimal count") {
    TempDir dir;
    const auto config = write_file(dir, "strong.cfg", kStrongDirectConfig);
    const auto out = dir.path("power.csv");
    REQUIRE(execute({"power-tradeoff", "--config", config, "--out", out}) == 0);

    const auto rows = testutil::parse_csv(testutil::slurp(out));
    REQUIRE(rows.size() == 12);
    CHECK(rows.front() ==
          std::vector<std::string>{"n", "pilot_power_dbm", "data_power_dbm", "is_optimal"});
    int optimal_count = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][3] == "1") {
            ++optimal_count;
            CHECK(rows[i][0] == "1");  // strong-direct scene favors one subarray
        }
    }
    CHECK(optimal_count == 1);

    // anchor the first row against hand arithmetic: sigma^2 = 1 W,
    // gamma_p = 100, so P_pilot(1) = 100 / (2 * alpha beta M)
    const double pilot_w = 100.0 / (2.0 * db_to_linear(-80.0) * db_to_linear(-60.0) * 1024.0);
    CHECK(std::abs(std::stod(rows[1][1]) - (10.0 * std::log10(pilot_w) + 30.0)) < 1e-6);
}

TEST_CASE("energy-vs-n: divisor curve plus optimizer row") {
    TempDir dir;
    SUBCASE("boundary regime repeats the optimal divisor") {
        const auto config = write_file(dir, "strong.cfg", kStrongDirectConfig);
        const auto out = dir.path("energy.csv");
        REQUIRE(execute({"energy-vs-n", "--config", config, "--out", out}) == 0);
        const auto rows = testutil::parse_csv(testutil::slurp(out));
        REQUIRE(rows.size() == 13);  // header + 11 divisors + optimizer row
        CHECK(rows.front() == std::vector<std::string>{"n", "energy_joules"});
        CHECK(rows.back()[0] == "1");
        CHECK(std::abs(std::stod(rows.back()[1]) - 2.6871e13) / 2.6871e13 < 0.005);
    }
    SUBCASE("interior regime appends the continuous root") {
        std::string weak(kStrongDirectConfig);
        weak.replace(weak.find("rho_db = -90"), 12, "rho_db = -110");
        weak.replace(weak.find("payload_symbols = 200"), 21, "payload_symbols = 150000");
        weak.replace(weak.find("variant = exact"), 15, "variant = lower_bound");
        const auto config = write_file(dir, "weak.cfg", weak);
        const auto out = dir.path("energy.csv");
        REQUIRE(execute({"energy-vs-n", "--config", config, "--out", out}) == 0);
        const auto rows = testutil::parse_csv(testutil::slurp(out));
        REQUIRE(rows.size() == 13);
        CHECK(std::abs(std::stod(rows.back()[0]) - 406.8) < 0.5);
    }
}

TEST_CASE("optimize: JSON record for the worked strong-direct case") {
    TempDir dir;
    const auto config = write_file(dir, "strong.cfg", kStrongDirectConfig);
    const auto out = dir.path("result.json");
    REQUIRE(execute({"optimize", "--config", config, "--out", out}) == 0);

    const auto doc = nlohmann::json::parse(testutil::slurp(out));
    CHECK(doc.at("regime") == "single_subarray");
    CHECK(doc.at("variant") == "exact");
    CHECK(doc.at("n_continuous").is_null());
    CHECK(doc.at("n_optimal") == 1);
    CHECK(doc.at("energy_curve").size() == 11);
    const double joules = doc.at("energy_at_optimum_joules").get<double>();
    CHECK(std::abs(joules - 2.6871e13) / 2.6871e13 < 0.005);
}

TEST_CASE("optimize: variant override changes the reported variant") {
    TempDir dir;
    const auto config = write_file(dir, "strong.cfg", kStrongDirectConfig);
    const auto out = dir.path("result.json");
    REQUIRE(execute({"optimize", "--config", config, "--out", out, "--variant", "lower_bound"}) ==
            0);
    const auto doc = nlohmann::json::parse(testutil::slurp(out));
    CHECK(doc.at("variant") == "lower_bound");
}

TEST_CASE("outputs are byte-identical across reruns and thread counts") {
    TempDir dir;
    const auto config = write_file(dir, "small.cfg", kSmallConfig);
    const auto first = dir.path("a.csv");
    const auto second = dir.path("b.csv");
    REQUIRE(execute({"snr-vs-n", "--config", config, "--out", first, "--threads", "1"}) == 0);
    REQUIRE(execute({"snr-vs-n", "--config", config, "--out", second, "--threads", "16"}) == 0);
    const auto bytes = testutil::slurp(first);
    CHECK(bytes == testutil::slurp(second));
    CHECK_FALSE(bytes.empty());

    REQUIRE(execute({"csi-loss", "--config", config, "--out", first, "--threads", "3"}) == 0);
    REQUIRE(execute({"csi-loss", "--config", config, "--out", second, "--threads", "1"}) == 0);
    CHECK(testutil::slurp(first) == testutil::slurp(second));
}

TEST_CASE("seed and trial overrides change the sampled column only") {
    TempDir dir;
    const auto config = write_file(dir, "small.cfg", kSmallConfig);
    const auto base = dir.path("a.csv");
    const auto reseeded = dir.path("b.csv");
    REQUIRE(execute({"snr-vs-n", "--config", config, "--out", base}) == 0);
    REQUIRE(execute({"snr-vs-n", "--config", config, "--out", reseeded, "--seed", "99"}) == 0);
    const auto rows_a = testutil::parse_csv(testutil::slurp(base));
    const auto rows_b = testutil::parse_csv(testutil::slurp(reseeded));
    REQUIRE(rows_a.size() == rows_b.size());
    bool mc_changed = false;
    for (std::size_t i = 1; i < rows_a.size(); ++i) {
        CHECK(rows_a[i][1] == rows_b[i][1]);  // analytic columns untouched
        CHECK(rows_a[i][2] == rows_b[i][2]);
        if (rows_a[i][4] != rows_b[i][4]) {
            mc_changed = true;
        }
    }
    CHECK(mc_changed);
}

TEST_CASE("config validation failures exit with code 2") {
    TempDir dir;
    SUBCASE("missing required key") {
        std::string broken(kSnrSweepConfig);
        broken.replace(broken.find("alpha_db = -80\n"), 15, "");
        const auto config = write_file(dir, "broken.cfg", broken);
        CHECK(execute({"optimize", "--config", config, "--out", dir.path("x.json")}) == 2);
    }
    SUBCASE("unknown key") {
        const auto config = write_file(dir, "broken.cfg", std::string(kSnrSweepConfig) + "bogus = 1\n");
        CHECK(execute({"optimize", "--config", config, "--out", dir.path("x.json")}) == 2);
    }
    SUBCASE("invalid field value") {
        std::string broken(kSnrSweepConfig);
        broken.replace(broken.find("m_elements = 1024"), 17, "m_elements = -4");
        const auto config = write_file(dir, "broken.cfg", broken);
        CHECK(execute({"optimize", "--config", config, "--out", dir.path("x.json")}) == 2);
    }
    SUBCASE("nonexistent config file") {
        CHECK(execute({"optimize", "--config", dir.path("missing.cfg"), "--out",
                       dir.path("x.json")}) == 2);
    }
    SUBCASE("snr-vs-n without tx_snr_db") {
        const auto config = write_file(dir, "no-tx.cfg", kStrongDirectConfig);
        CHECK(execute({"snr-vs-n", "--config", config, "--out", dir.path("x.csv")}) == 2);
    }
}

TEST_CASE("unwritable output path exits with code 3") {
    TempDir dir;
    const auto config = write_file(dir, "strong.cfg", kStrongDirectConfig);
    CHECK(execute({"optimize", "--config", config, "--out",
                   dir.path("no-such-dir") + "/x.json"}) == 3);
}

TEST_CASE("usage errors are reported") {
    CHECK(execute({"frobnicate"}) == 1);
    CHECK(execute({}) == 1);
    CHECK(execute({"optimize"}) == 1);  // missing required flags
}
