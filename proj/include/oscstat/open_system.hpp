#pragma once

#include <vector>

#include "oscstat/spectra.hpp"

namespace oscstat {

/// Accessibility of a level with respect to the sign of hbar*omega_eff(q).
/// `Boundary` is only reported when a non-zero tolerance is requested.
enum class Accessibility { Accessible, Inaccessible, Boundary };

enum class FermionClass { Bound, Exchangeable };

/// Levels 0..q_max split by accessibility at a given chemical potential.
struct AccessibleSet {
    double q_min = 0.0;
    std::vector<Level> accessible;
    std::vector<Level> inaccessible;
    std::vector<Level> boundary;  // |omega_eff| <= tolerance, only when tolerance > 0
};

struct PositivityReport {
    bool positive = false;
    double effective_energy = 0.0;
    std::vector<Level> offending_levels;  // occupied levels with omega_eff <= 0
};

/// hbar*omega_eff(q) = hbar*omega/2 + q*hbar*omega - mu. May be negative.
[[nodiscard]] double effective_frequency(Level q, double mu, const OscillatorParams& p);

/// Threshold mu/(hbar*omega) - 1/2; level q is accessible iff q > threshold.
[[nodiscard]] double q_min_vibrational(double mu, const OscillatorParams& p);

/// Strict classification. With tolerance > 0, levels with |omega_eff| <= tolerance
/// are reported as Boundary instead of being folded into either side.
[[nodiscard]] Accessibility classify_level(Level q, double mu, const OscillatorParams& p,
                                           double tolerance = 0.0);

[[nodiscard]] AccessibleSet accessible_set(double mu, const OscillatorParams& p, Level q_max,
                                           double tolerance = 0.0);

/// Single-series form sum_q [hbar*omega*(q+1/2) - mu] * n_q.
[[nodiscard]] double effective_energy_vibrational(const OccupationState& occ, double mu,
                                                  const OscillatorParams& p);

/// Two-sum form sum_q hbar*omega*(q+1/2) n_q - mu * sum_q n_q.
[[nodiscard]] double effective_energy_vibrational_two_sum(const OccupationState& occ, double mu,
                                                          const OscillatorParams& p);

/// Positivity of the effective energy. The vacuum has energy 0 and is
/// therefore reported as not positive.
[[nodiscard]] PositivityReport positivity_check(const OccupationState& occ, double mu,
                                                const OscillatorParams& p);

/// Bound iff hbar*omega*(q+1/2) < mu. Exact equality is Exchangeable.
[[nodiscard]] FermionClass classify_fermion_state(Level q, double mu, const OscillatorParams& p);

}  // namespace oscstat
