#include "oscstat/spectra.hpp"

#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

std::map<Level, Count> drop_zeros(std::map<Level, Count> occupations) {
    std::erase_if(occupations, [](const auto& entry) { return entry.second == 0; });
    return occupations;
}

}  // namespace

void OscillatorParams::validate() const {
    if (!(hbar > 0.0)) throw MalformedInputError("core_spectra", "hbar must be > 0");
    if (!(mass > 0.0)) throw MalformedInputError("core_spectra", "mass must be > 0");
    if (!(omega > 0.0)) throw MalformedInputError("core_spectra", "omega must be > 0");
}

OccupationState::OccupationState(std::map<Level, Count> occupations)
    : occupations_(drop_zeros(std::move(occupations))) {
    total_ = count_sum();
}

OccupationState::OccupationState(std::map<Level, Count> occupations, Count declared_total)
    : occupations_(drop_zeros(std::move(occupations))), total_(declared_total) {}

Count OccupationState::count_sum() const noexcept {
    Count sum = 0;
    for (const auto& [q, n] : occupations_) sum += n;
    return sum;
}

Count OccupationState::at(Level q) const {
    const auto it = occupations_.find(q);
    return it == occupations_.end() ? 0 : it->second;
}

bool OccupationState::is_closed() const noexcept {
    for (const auto& [q, n] : occupations_) {
        if (q < 0 || n < 0) return false;
    }
    return total_ == count_sum();
}

void OccupationState::require_closed() const {
    for (const auto& [q, n] : occupations_) {
        if (q < 0) throw MalformedInputError("core_spectra", "negative level " + std::to_string(q));
        if (n < 0) {
            throw MalformedInputError("core_spectra",
                                      "negative occupation at level " + std::to_string(q));
        }
    }
    if (total_ != count_sum()) {
        throw MalformedInputError("core_spectra", "closure violated: declared total " +
                                                      std::to_string(total_) + " but occupations sum to " +
                                                      std::to_string(count_sum()));
    }
}

OccupationState OccupationState::merged(const OccupationState& other) const {
    auto combined = occupations_;
    for (const auto& [q, n] : other.occupations_) combined[q] += n;
    return OccupationState(std::move(combined), total_ + other.total_);
}

double mode_energy(Level q, const OscillatorParams& p) {
    return p.quantum() * (static_cast<double>(q) + 0.5);
}

double ensemble_energy(const OccupationState& occ, const OscillatorParams& p) {
    occ.require_closed();
    double energy = 0.0;
    for (const auto& [q, n] : occ.occupations()) energy += mode_energy(q, p) * static_cast<double>(n);
    return energy;
}

}  // namespace oscstat
