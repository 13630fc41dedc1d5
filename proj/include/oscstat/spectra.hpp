#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace oscstat {

using Level = std::int64_t;  // vibrational quantum number q >= 0
using Count = std::int64_t;  // occupation number n_q >= 0

/// Physical constants of one oscillator species. Reduced units (hbar = 1)
/// by default; SI values work as long as they are used consistently.
struct OscillatorParams {
    double hbar = 1.0;
    double mass = 1.0;
    double omega = 1.0;

    /// Throws MalformedInputError unless every field is strictly positive.
    void validate() const;

    [[nodiscard]] double quantum() const noexcept { return hbar * omega; }
};

/// Sparse occupation-number state {q -> n_q}. Zero entries are dropped.
///
/// The declared total is kept separately from the entries so that states
/// read from external input can be checked against the closure condition
/// sum_q n_q == total before any energy is evaluated.
class OccupationState {
public:
    OccupationState() = default;

    /// Total is derived from the counts, so the state is closed by construction.
    explicit OccupationState(std::map<Level, Count> occupations);

    /// Keeps `declared_total` as given; use `is_closed()` / `require_closed()`.
    OccupationState(std::map<Level, Count> occupations, Count declared_total);

    [[nodiscard]] const std::map<Level, Count>& occupations() const noexcept { return occupations_; }
    [[nodiscard]] Count total() const noexcept { return total_; }
    [[nodiscard]] Count count_sum() const noexcept;
    [[nodiscard]] Count at(Level q) const;
    [[nodiscard]] bool empty() const noexcept { return occupations_.empty(); }

    [[nodiscard]] bool is_closed() const noexcept;

    /// Throws MalformedInputError on negative levels/counts or a closure violation.
    void require_closed() const;

    /// Disjoint union: counts of equal levels add.
    [[nodiscard]] OccupationState merged(const OccupationState& other) const;

private:
    std::map<Level, Count> occupations_;
    Count total_ = 0;
};

/// hbar*omega*(q + 1/2).
[[nodiscard]] double mode_energy(Level q, const OscillatorParams& p);

/// sum_q hbar*omega*(q + 1/2) * n_q for a closed state.
[[nodiscard]] double ensemble_energy(const OccupationState& occ, const OscillatorParams& p);

}  // namespace oscstat
