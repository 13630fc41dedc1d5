#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "oscstat/spectra.hpp"

namespace oscstat {

/// Periodic chain of N identical oscillators with nearest-neighbour coupling c.
/// c = 0 is accepted as the decoupled limit.
struct ChainParams {
    std::size_t count = 1;
    OscillatorParams osc;
    double coupling = 0.0;

    void validate() const;
};

/// Level q_s of every normal mode s = 1..N (stored 0-based) and the derived
/// groups S_q = {s : q_s = q}.
class ChainAssignment {
public:
    explicit ChainAssignment(std::vector<Level> levels);

    [[nodiscard]] std::span<const Level> levels() const noexcept { return levels_; }
    [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }

    /// S_q with 1-based mode indices.
    [[nodiscard]] const std::map<Level, std::vector<std::size_t>>& groups() const noexcept { return groups_; }
    [[nodiscard]] std::span<const std::size_t> group(Level q) const;

    /// n_q = |S_q|.
    [[nodiscard]] OccupationState occupations() const;

private:
    std::vector<Level> levels_;
    std::map<Level, std::vector<std::size_t>> groups_;
};

struct GroupedFormResult {
    double grouped = 0.0;    // literal grouped expression
    double canonical = 0.0;  // per-mode direct sum
    bool discrepancy = false;  // some |S_q| > 1
};

/// omega_s = omega * sqrt(1 + 4c sin^2(pi s / N)), s = 1..N.
[[nodiscard]] std::vector<double> chain_frequencies(const ChainParams& ch);

/// sum_s hbar*omega_s*(q_s + 1/2).
[[nodiscard]] double chain_energy(const ChainAssignment& a, const ChainParams& ch);

/// sum_s [hbar*omega_s*(q_s + 1/2) - mu].
[[nodiscard]] double chain_effective_energy(const ChainAssignment& a, double mu, const ChainParams& ch);

/// Evaluates sum_q [sum_{s in S_q} hbar*omega_s*(q+1/2)] * |S_q| - mu * N as written,
/// next to the canonical form. The two differ whenever a level is shared.
[[nodiscard]] GroupedFormResult grouped_form_energy(const ChainAssignment& a, double mu,
                                                    const ChainParams& ch);

/// mu / (sum_{s in S_q} hbar*omega_s) - 1/2. Throws DomainError when S_q is empty.
[[nodiscard]] double q_min_chain(double mu, Level q, const ChainAssignment& a, const ChainParams& ch);

}  // namespace oscstat
