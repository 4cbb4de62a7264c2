// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#include "risopt/system_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace risopt {

double db_to_linear(double value_db) {
    if (!std::isfinite(value_db)) {
        throw std::invalid_argument("db_to_linear: input must be finite");
    }
    return std::pow(10.0, value_db / 10.0);
}

double linear_to_db(double ratio) {
    if (!std::isfinite(ratio) || ratio <= 0.0) {
        throw std::invalid_argument("linear_to_db: input must be finite and positive");
    }
    return 10.0 * std::log10(ratio);
}

double dbm_to_watts(double value_dbm) {
    return db_to_linear(value_dbm) * 1e-3;
}

double watts_to_dbm(double power_w) {
    return linear_to_db(power_w) + 30.0;
}

SubarrayCount::SubarrayCount(int n, int m_elements) : n_(n), m_(m_elements) {
    if (m_elements < 1 || m_elements > kMaxElements) {
        throw std::invalid_argument("SubarrayCount: m_elements out of range");
    }
    if (n < 1 || n > m_elements || m_elements % n != 0) {
        std::ostringstream msg;
        msg << "SubarrayCount: N = " << n << " is not a divisor of M = " << m_elements;
        throw std::invalid_argument(msg.str());
    }
}

std::vector<SubarrayCount> feasible_subarray_counts(int m_elements) {
    if (m_elements < 1 || m_elements > kMaxElements) {
        throw std::invalid_argument("feasible_subarray_counts: m_elements out of range");
    }
    std::vector<int> small;
    std::vector<int> large;
    for (int d = 1; static_cast<long>(d) * d <= m_elements; ++d) {
        if (m_elements % d != 0) {
            continue;
        }
        small.push_back(d);
        if (d != m_elements / d) {
            large.push_back(m_elements / d);
        }
    }
    std::vector<SubarrayCount> out;
    out.reserve(small.size() + large.size());
    for (int d : small) {
        out.emplace_back(d, m_elements);
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) {
        out.emplace_back(*it, m_elements);
    }
    return out;
}

namespace {

void check_positive(std::vector<std::string>& errors, const char* name, double value) {
    if (!std::isfinite(value) || value <= 0.0) {
        errors.push_back(std::string(name) + ": must be finite and > 0");
    }
}

}  // namespace

std::vector<std::string> validation_errors(const SystemParams& params, const LinkBudget& link) {
    std::vector<std::string> errors;
    // alpha and beta must be strictly positive: the pilot power formula
    // divides by alpha*beta*M. rho = 0 models a blocked direct path.
    check_positive(errors, "alpha", params.alpha);
    check_positive(errors, "beta", params.beta);
    if (!std::isfinite(params.rho) || params.rho < 0.0) {
        errors.push_back("rho: must be finite and >= 0");
    }
    if (params.m_elements < 1) {
        errors.push_back("m_elements: must be >= 1");
    } else if (params.m_elements > kMaxElements) {
        errors.push_back("m_elements: exceeds supported maximum of 1000000");
    }
    check_positive(errors, "noise_power", link.noise_power);
    check_positive(errors, "symbol_rate", link.symbol_rate);
    check_positive(errors, "gamma_p", link.gamma_p);
    check_positive(errors, "gamma_d", link.gamma_d);
    if (link.payload_symbols < 1) {
        errors.push_back("payload_symbols: must be >= 1");
    }
    return errors;
}

void validate(const SystemParams& params, const LinkBudget& link) {
    const auto errors = validation_errors(params, link);
    if (errors.empty()) {
        return;
    }
    std::string joined;
    for (const auto& e : errors) {
        if (!joined.empty()) {
            joined += "; ";
        }
        joined += e;
    }
    throw std::invalid_argument("invalid configuration: " + joined);
}

}  // namespace risopt
