#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "oscstat/spectra.hpp"

namespace oscstat {

using Mode = std::int64_t;  // translational index k, any sign

/// Inclusive integer range [lo, hi].
struct IndexRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    [[nodiscard]] bool contains(std::int64_t v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] std::int64_t size() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
};

/// Oscillators with a translational degree of freedom in a box of side L.
///
/// The translational unit 4*pi^2*hbar^2/(2*m*L^2) is derived from L, or set
/// directly via `with_translational_unit` so that reduced settings (unit = 1)
/// are represented exactly.
class GasParams {
public:
    GasParams(OscillatorParams osc, double box_length);

    [[nodiscard]] static GasParams with_translational_unit(OscillatorParams osc, double unit);

    /// hbar = omega = translational unit = 1, mass = 1/2, L = 2*pi.
    [[nodiscard]] static GasParams reduced();

    [[nodiscard]] const OscillatorParams& osc() const noexcept { return osc_; }
    [[nodiscard]] double box_length() const noexcept { return box_length_; }
    [[nodiscard]] double translational_unit() const noexcept { return unit_; }

private:
    GasParams(OscillatorParams osc, double box_length, double unit);

    OscillatorParams osc_;
    double box_length_;
    double unit_;
};

/// Sparse state {(k, q) -> n_{k,q}} with a declared total, see OccupationState.
class GasOccupationState {
public:
    using Key = std::pair<Mode, Level>;

    GasOccupationState() = default;
    explicit GasOccupationState(std::map<Key, Count> occupations);
    GasOccupationState(std::map<Key, Count> occupations, Count declared_total);

    [[nodiscard]] const std::map<Key, Count>& occupations() const noexcept { return occupations_; }
    [[nodiscard]] Count total() const noexcept { return total_; }
    [[nodiscard]] Count count_sum() const noexcept;
    void require_closed() const;

    /// Vibrational state obtained when every entry has k = 0.
    [[nodiscard]] OccupationState vibrational_part() const;

private:
    std::map<Key, Count> occupations_;
    Count total_ = 0;
};

struct GasConditionRow {
    Mode k = 0;
    double translational_energy = 0.0;
    bool extended_holds = false;  // eps_k + hbar*omega/2 - mu > 0
    bool classic_holds = false;   // eps_k - mu > 0
    [[nodiscard]] bool gap() const noexcept { return extended_holds != classic_holds; }
};

/// eps_k = 4*pi^2*hbar^2*k^2/(2*m*L^2).
[[nodiscard]] double translational_energy(Mode k, const GasParams& g);

/// eps_k + hbar*omega*(q + 1/2).
[[nodiscard]] double joint_energy(Mode k, Level q, const GasParams& g);

/// sum_{k,q} [eps_k + hbar*omega*(q+1/2) - mu] * n_{k,q}.
[[nodiscard]] double effective_energy_gas(const GasOccupationState& occ, double mu, const GasParams& g);

/// sum_{k,q} (eps_k + hbar*omega*(q+1/2)) n_{k,q} - mu * sum n_{k,q}.
[[nodiscard]] double effective_energy_gas_two_sum(const GasOccupationState& occ, double mu,
                                                  const GasParams& g);

/// mu/(hbar*omega) - eps_k/(hbar*omega) - 1/2.
[[nodiscard]] double q_min_gas(double mu, Mode k, const GasParams& g);

/// Per-k comparison of the extended condition at q = 0 with the point-particle one.
[[nodiscard]] std::vector<GasConditionRow> bose_gas_condition(double mu, const GasParams& g,
                                                              IndexRange k_range);

}  // namespace oscstat
