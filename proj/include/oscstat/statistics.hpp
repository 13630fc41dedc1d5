#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "oscstat/gas.hpp"
#include "oscstat/series_result.hpp"
#include "oscstat/spectra.hpp"

namespace oscstat {

/// Inverse temperature (> 0) and chemical potential (any sign).
struct Thermo {
    double beta = 1.0;
    double mu = 0.0;

    void validate() const;
};

enum class StatisticsKind { Bose, Fermi };

[[nodiscard]] std::string_view to_string(StatisticsKind kind) noexcept;

/// Mean occupation together with a flag for Bose occupations evaluated so
/// close to x = 0 (x < 1e-12) that the value exceeds ~1e12.
struct Occupation {
    double value = 0.0;
    bool near_divergence = false;
};

inline constexpr double kNearDivergenceExponent = 1e-12;

/// 1/(e^x -+ 1) for the reduced exponent x = beta*(energy - mu).
/// Bose requires x > 0 and throws DomainError otherwise.
[[nodiscard]] Occupation occupation_from_exponent(double x, StatisticsKind kind);

/// Same as above but reports an invalid Bose exponent as nullopt.
[[nodiscard]] std::optional<double> try_occupation_from_exponent(double x, StatisticsKind kind) noexcept;

[[nodiscard]] double occupation_number(double energy, const Thermo& t, StatisticsKind kind);

/// <n> = sum_q 1/(exp(beta*(hbar*omega*(q+1/2) - mu)) -+ 1), truncated adaptively.
/// Bose requires mu < hbar*omega/2.
[[nodiscard]] SeriesResult mean_particle_number(const Thermo& t, const OscillatorParams& p, StatisticsKind kind,
                                                const TruncationPolicy& policy = {});

struct ModeOccupation {
    Mode k = 0;
    double energy = 0.0;
    double occupation = 0.0;
};

struct BoseGasResult {
    double log_partition = 0.0;          // over the requested k range
    std::vector<ModeOccupation> modes;   // one per k in range
    double tail_bound = 0.0;             // bound on log Z contributions from k outside the range
    bool tail_within_tolerance = false;  // tail_bound <= policy.target(log_partition)
};

/// Point-particle Bose gas with eps_k from the box: log Z and <n_k> per mode.
/// Throws DomainError naming the first k in range with eps_k <= mu.
[[nodiscard]] BoseGasResult ideal_bose_gas(const Thermo& t, const GasParams& g, IndexRange k_range,
                                           const TruncationPolicy& policy = {});

struct ValidityMismatch {
    Mode k = 0;
    Level q = 0;
};

struct ValidityReport {
    bool agree = true;
    std::int64_t points_checked = 0;
    std::int64_t valid_points = 0;
    std::vector<ValidityMismatch> mismatches;
};

/// On every grid point compares three predicates: the Bose occupation of
/// (k, q) exists and is non-negative; the exponent eps_k + hbar*omega*(q+1/2) - mu
/// is positive; q > q_min_gas(mu, k). Agreement must be exact.
[[nodiscard]] ValidityReport remark_b1_check(const Thermo& t, const GasParams& g, IndexRange k_range,
                                             IndexRange q_range);

}  // namespace oscstat
