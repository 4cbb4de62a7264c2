// SPDX-License-Identifier: Apache-2.0
// risopt: RIS subarray link modeling and UE transmit-energy optimization

#ifndef RISOPT_SYSTEM_MODEL_HPP
#define RISOPT_SYSTEM_MODEL_HPP

#include <string>
#include <vector>

namespace risopt {

/// Largest supported RIS element count. Divisor enumeration uses plain trial
/// division, which is more than adequate up to this size.
inline constexpr int kMaxElements = 1'000'000;

// dB <-> linear conversions. All internal math is carried out in linear
// units; decibels appear only at ingestion and reporting boundaries.
double db_to_linear(double value_db);
double linear_to_db(double ratio);
double dbm_to_watts(double value_dbm);
double watts_to_dbm(double power_w);

/// Large-scale parameters of the physical scene.
struct SystemParams {
    double alpha = 0.0;  ///< BS-RIS path power gain (linear, > 0)
    double beta = 0.0;   ///< UE-to-RIS-element power gain (linear, > 0)
    double rho = 0.0;    ///< direct UE-BS power gain (linear, >= 0; 0 = blocked)
    int m_elements = 0;  ///< RIS element count M

    /// Total cascaded gain alpha*beta*M collected by the full aperture.
    double cascaded_gain() const { return alpha * beta * static_cast<double>(m_elements); }
};

/// Radio-link budget for one finite-payload uplink transmission.
struct LinkBudget {
    double noise_power = 0.0;   ///< sigma^2 in watts
    double symbol_rate = 0.0;   ///< B in symbols/second
    double gamma_p = 0.0;       ///< required pilot SNR, linear
    double gamma_d = 0.0;       ///< required data SNR, linear
    long payload_symbols = 0;   ///< L, number of data symbols
};

/// A feasible number of subarrays: N with 1 <= N <= M and M % N == 0.
/// Divisibility holds by construction; the constructor rejects anything else.
class SubarrayCount {
  public:
    SubarrayCount(int n, int m_elements);

    int value() const { return n_; }
    int m_elements() const { return m_; }
    int elements_per_subarray() const { return m_ / n_; }

    friend bool operator==(const SubarrayCount&, const SubarrayCount&) = default;

  private:
    int n_;
    int m_;
};

/// All feasible subarray counts for an RIS with m_elements elements,
/// ascending. First entry is 1, last is m_elements.
std::vector<SubarrayCount> feasible_subarray_counts(int m_elements);

/// Returns one message per violated invariant; empty means valid.
/// rho == 0 is a modeled case (blocked direct path) and is accepted.
std::vector<std::string> validation_errors(const SystemParams& params, const LinkBudget& link);

/// Throws std::invalid_argument listing every violation; no-op when valid.
void validate(const SystemParams& params, const LinkBudget& link);

}  // namespace risopt

#endif  // RISOPT_SYSTEM_MODEL_HPP
