// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "risopt/montecarlo.hpp"
#include "risopt/optimizer.hpp"
#include "risopt/pilot.hpp"

namespace risopt {

namespace {

// Regression-stable numeric formatting: 9 significant digits.
std::string format9(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(begin, end - begin + 1));
}

const std::vector<std::string> kRequiredKeys = {
    "alpha_db",   "beta_db",        "rho_db",          "m_elements",
    "noise_dbm",  "symbol_rate_hz", "gamma_p_db",      "gamma_d_db",
    "payload_symbols", "seed",      "trials",          "variant"};

const std::vector<std::string> kOptionalKeys = {"tx_snr_db", "csi_grid_min_db", "csi_grid_max_db",
                                                "csi_grid_step_db"};

bool known_key(const std::string& key) {
    for (const auto& k : kRequiredKeys) {
        if (k == key) {
            return true;
        }
    }
    for (const auto& k : kOptionalKeys) {
        if (k == key) {
            return true;
        }
    }
    return false;
}

bool parse_double(const std::string& text, double& out) {
    std::istringstream stream(text);
    stream >> out;
    return static_cast<bool>(stream) && stream.eof() && std::isfinite(out);
}

bool parse_long(const std::string& text, long& out) {
    std::istringstream stream(text);
    stream >> out;
    return static_cast<bool>(stream) && stream.eof();
}

bool parse_u64(const std::string& text, std::uint64_t& out) {
    std::istringstream stream(text);
    stream >> out;
    return static_cast<bool>(stream) && stream.eof();
}

}  // namespace

SystemParams ExperimentConfig::system_params() const {
    return {db_to_linear(alpha_db), db_to_linear(beta_db), db_to_linear(rho_db), m_elements};
}

LinkBudget ExperimentConfig::link_budget() const {
    return {dbm_to_watts(noise_dbm), symbol_rate_hz, db_to_linear(gamma_p_db),
            db_to_linear(gamma_d_db), payload_symbols};
}

std::optional<ExperimentConfig> load_config(const std::string& path,
                                            std::vector<std::string>& errors) {
    std::ifstream file(path);
    if (!file) {
        errors.push_back("config: cannot open '" + path + "'");
        return std::nullopt;
    }

    std::map<std::string, std::string> entries;
    std::string line;
    int line_number = 0;
    while (std::getline(file, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line.erase(comment);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const auto equals = stripped.find('=');
        if (equals == std::string::npos) {
            errors.push_back("config line " + std::to_string(line_number) +
                             ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(stripped.substr(0, equals));
        const std::string value = trim(stripped.substr(equals + 1));
        if (!known_key(key)) {
            errors.push_back(key + ": unknown key");
            continue;
        }
        entries[key] = value;
    }

    for (const auto& key : kRequiredKeys) {
        if (entries.find(key) == entries.end()) {
            errors.push_back(key + ": missing required key");
        }
    }
    if (!errors.empty()) {
        return std::nullopt;
    }

    ExperimentConfig config;
    auto read_double = [&](const char* key, double& out) {
        if (entries.count(key) && !parse_double(entries[key], out)) {
            errors.push_back(std::string(key) + ": not a finite number '" + entries[key] + "'");
        }
    };
    read_double("alpha_db", config.alpha_db);
    read_double("beta_db", config.beta_db);
    read_double("rho_db", config.rho_db);
    read_double("noise_dbm", config.noise_dbm);
    read_double("symbol_rate_hz", config.symbol_rate_hz);
    read_double("gamma_p_db", config.gamma_p_db);
    read_double("gamma_d_db", config.gamma_d_db);
    read_double("csi_grid_min_db", config.csi_grid_min_db);
    read_double("csi_grid_max_db", config.csi_grid_max_db);
    read_double("csi_grid_step_db", config.csi_grid_step_db);

    long m = 0;
    if (!parse_long(entries["m_elements"], m) || m < 1 || m > kMaxElements) {
        errors.push_back("m_elements: must be an integer in [1, 1000000]");
    } else {
        config.m_elements = static_cast<int>(m);
    }
    if (!parse_long(entries["payload_symbols"], config.payload_symbols)) {
        errors.push_back("payload_symbols: not an integer");
    }
    if (!parse_u64(entries["seed"], config.seed)) {
        errors.push_back("seed: not a 64-bit unsigned integer");
    }
    if (!parse_long(entries["trials"], config.trials) || config.trials < 2) {
        errors.push_back("trials: must be an integer >= 2");
    }
    if (const auto variant = parse_variant(entries["variant"])) {
        config.variant = *variant;
    } else {
        errors.push_back("variant: must be 'exact' or 'lower_bound'");
    }
    if (entries.count("tx_snr_db")) {
        double tx = 0.0;
        if (parse_double(entries["tx_snr_db"], tx)) {
            config.tx_snr_db = tx;
        } else {
            errors.push_back("tx_snr_db: not a finite number");
        }
    }
    if (!(config.csi_grid_step_db > 0.0) || config.csi_grid_max_db < config.csi_grid_min_db) {
        errors.push_back("csi_grid: need step > 0 and max >= min");
    }
    if (!errors.empty()) {
        return std::nullopt;
    }

    for (const auto& message : validation_errors(config.system_params(), config.link_budget())) {
        errors.push_back(message);
    }
    if (!errors.empty()) {
        return std::nullopt;
    }
    return config;
}

namespace {

int report_config_errors(const std::vector<std::string>& errors) {
    for (const auto& message : errors) {
        std::cerr << "config error: " << message << "\n";
    }
    return 2;
}

std::optional<std::ofstream> open_output(const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot write output file '" << path << "'\n";
        return std::nullopt;
    }
    return file;
}

int run_snr_vs_n(const ExperimentConfig& config, const std::string& out_path, int threads) {
    if (!config.tx_snr_db) {
        return report_config_errors({"tx_snr_db: missing required key (snr-vs-n needs it)"});
    }
    auto file = open_output(out_path);
    if (!file) {
        return 3;
    }
    const SystemParams params = config.system_params();
    const LinkBudget link = config.link_budget();
    const double noise = link.noise_power;
    const double p_data = db_to_linear(*config.tx_snr_db) * noise;

    *file << "n,snr_exact_db,snr_lower_bound_db,snr_baseline_db,snr_mc_db,mc_std_error\n";
    for (const auto& n : feasible_subarray_counts(params.m_elements)) {
        const auto mc = mc_mean_max_snr(params, n, p_data, noise, config.trials,
                                        derive_seed(config.seed, n.value()), threads);
        *file << n.value() << ',' << format9(linear_to_db(snr_exact(params, n, p_data, noise)))
              << ',' << format9(linear_to_db(snr_lower_bound(params, n, p_data, noise))) << ','
              << format9(linear_to_db(snr_baseline_individual(params, n, p_data, noise))) << ','
              << format9(linear_to_db(mc.mean)) << ',' << format9(mc.std_error) << '\n';
    }
    return 0;
}

int run_csi_loss(const ExperimentConfig& config, const std::string& out_path, int threads) {
    auto file = open_output(out_path);
    if (!file) {
        return 3;
    }
    const SystemParams params = config.system_params();
    const SubarrayCount full(params.m_elements, params.m_elements);

    std::vector<double> grid_db;
    std::vector<double> grid_linear;
    for (double db = config.csi_grid_min_db; db <= config.csi_grid_max_db + 1e-9;
         db += config.csi_grid_step_db) {
        grid_db.push_back(db);
        grid_linear.push_back(db_to_linear(db));
    }
    const auto points = csi_loss(params, full, grid_linear, config.trials, config.seed, threads);

    *file << "gamma_p_db,mean_ratio,std_error\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        *file << format9(grid_db[i]) << ',' << format9(points[i].mean_ratio) << ','
              << format9(points[i].std_error) << '\n';
    }
    return 0;
}

int run_power_tradeoff(const ExperimentConfig& config, const std::string& out_path) {
    auto file = open_output(out_path);
    if (!file) {
        return 3;
    }
    const SystemParams params = config.system_params();
    const LinkBudget link = config.link_budget();
    const auto result = optimize_subarrays(params, link, config.variant);

    *file << "n,pilot_power_dbm,data_power_dbm,is_optimal\n";
    for (const auto& n : feasible_subarray_counts(params.m_elements)) {
        const auto powers = required_powers(params, link, n, config.variant);
        *file << n.value() << ',' << format9(watts_to_dbm(powers.p_pilot)) << ','
              << format9(watts_to_dbm(powers.p_data)) << ','
              << (n.value() == result.n_optimal.value() ? 1 : 0) << '\n';
    }
    return 0;
}

int run_energy_vs_n(const ExperimentConfig& config, const std::string& out_path) {
    auto file = open_output(out_path);
    if (!file) {
        return 3;
    }
    const SystemParams params = config.system_params();
    const LinkBudget link = config.link_budget();
    const auto result = optimize_subarrays(params, link, config.variant);

    *file << "n,energy_joules\n";
    for (const auto& [n, joules] : result.energy_curve) {
        *file << n << ',' << format9(joules) << '\n';
    }
    // Optimizer row: the continuous root when one exists, else the chosen
    // endpoint.
    if (result.n_continuous) {
        *file << format9(*result.n_continuous) << ','
              << format9(energy_continuous(params, link, *result.n_continuous, config.variant))
              << '\n';
    } else {
        *file << result.n_optimal.value() << ',' << format9(result.energy_at_optimum) << '\n';
    }
    return 0;
}

int run_optimize(const ExperimentConfig& config, const std::string& out_path) {
    auto file = open_output(out_path);
    if (!file) {
        return 3;
    }
    const auto result =
        optimize_subarrays(config.system_params(), config.link_budget(), config.variant);

    nlohmann::ordered_json doc;
    doc["regime"] = to_string(result.regime);
    doc["variant"] = to_string(result.variant);
    if (result.n_continuous) {
        doc["n_continuous"] = *result.n_continuous;
    } else {
        doc["n_continuous"] = nullptr;
    }
    doc["n_optimal"] = result.n_optimal.value();
    doc["energy_at_optimum_joules"] = result.energy_at_optimum;
    auto& curve = doc["energy_curve"] = nlohmann::ordered_json::array();
    for (const auto& [n, joules] : result.energy_curve) {
        curve.push_back({{"n", n}, {"energy_joules", joules}});
    }
    *file << doc.dump(2) << '\n';
    return 0;
}

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> variant;
    int threads = 0;
};

void add_common_options(CLI::App* sub, CliOptions& options) {
    sub->add_option("--config", options.config_path, "experiment config file")->required();
    sub->add_option("--out", options.out_path, "output file path")->required();
    sub->add_option("--trials", options.trials, "override trial count");
    sub->add_option("--seed", options.seed, "override master seed");
    sub->add_option("--variant", options.variant, "override SNR variant")
        ->check(CLI::IsMember({"exact", "lower_bound"}));
    sub->add_option("--threads", options.threads, "worker threads (0 = hardware)");
}

}  // namespace

int execute(const std::vector<std::string>& args) {
    CLI::App app{"RIS subarray link modeling and UE transmit-energy optimization"};
    app.require_subcommand(1);

    CliOptions options;
    CLI::App* snr_vs_n = app.add_subcommand("snr-vs-n", "mean data SNR per feasible subarray count");
    CLI::App* csi = app.add_subcommand("csi-loss", "data-SNR fraction vs pilot SNR under estimated CSI");
    CLI::App* power = app.add_subcommand("power-tradeoff", "required pilot and data powers per subarray count");
    CLI::App* energy_cmd = app.add_subcommand("energy-vs-n", "UE energy per feasible subarray count");
    CLI::App* optimize = app.add_subcommand("optimize", "energy-minimizing subarray count as JSON");
    for (CLI::App* sub : {snr_vs_n, csi, power, energy_cmd, optimize}) {
        add_common_options(sub, options);
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("risopt");
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::vector<std::string> errors;
    auto config = load_config(options.config_path, errors);
    if (!config) {
        return report_config_errors(errors);
    }
    if (options.trials) {
        if (*options.trials < 2) {
            return report_config_errors({"trials: must be an integer >= 2"});
        }
        config->trials = *options.trials;
    }
    if (options.seed) {
        config->seed = *options.seed;
    }
    if (options.variant) {
        config->variant = *parse_variant(*options.variant);
    }

    try {
        if (snr_vs_n->parsed()) {
            return run_snr_vs_n(*config, options.out_path, options.threads);
        }
        if (csi->parsed()) {
            return run_csi_loss(*config, options.out_path, options.threads);
        }
        if (power->parsed()) {
            return run_power_tradeoff(*config, options.out_path);
        }
        if (energy_cmd->parsed()) {
            return run_energy_vs_n(*config, options.out_path);
        }
        return run_optimize(*config, options.out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace risopt
