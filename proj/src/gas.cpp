#include "oscstat/gas.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

constexpr double kFourPiSquared = 4.0 * std::numbers::pi * std::numbers::pi;

std::map<GasOccupationState::Key, Count> drop_zeros(std::map<GasOccupationState::Key, Count> occ) {
    std::erase_if(occ, [](const auto& entry) { return entry.second == 0; });
    return occ;
}

}  // namespace

GasParams::GasParams(OscillatorParams osc, double box_length)
    : osc_(osc), box_length_(box_length), unit_(0.0) {
    osc_.validate();
    if (!(box_length > 0.0)) throw MalformedInputError("quantum_gas", "box_length must be > 0");
    unit_ = kFourPiSquared * osc_.hbar * osc_.hbar / (2.0 * osc_.mass * box_length * box_length);
}

GasParams::GasParams(OscillatorParams osc, double box_length, double unit)
    : osc_(osc), box_length_(box_length), unit_(unit) {}

GasParams GasParams::with_translational_unit(OscillatorParams osc, double unit) {
    osc.validate();
    if (!(unit > 0.0)) throw MalformedInputError("quantum_gas", "translational unit must be > 0");
    const double length = std::numbers::pi * osc.hbar * std::sqrt(2.0 / (osc.mass * unit));
    return GasParams(osc, length, unit);
}

GasParams GasParams::reduced() {
    return with_translational_unit(OscillatorParams{1.0, 0.5, 1.0}, 1.0);
}

GasOccupationState::GasOccupationState(std::map<Key, Count> occupations)
    : occupations_(drop_zeros(std::move(occupations))) {
    total_ = count_sum();
}

GasOccupationState::GasOccupationState(std::map<Key, Count> occupations, Count declared_total)
    : occupations_(drop_zeros(std::move(occupations))), total_(declared_total) {}

Count GasOccupationState::count_sum() const noexcept {
    Count sum = 0;
    for (const auto& [key, n] : occupations_) sum += n;
    return sum;
}

void GasOccupationState::require_closed() const {
    for (const auto& [key, n] : occupations_) {
        if (key.second < 0) {
            throw MalformedInputError("quantum_gas", "negative level " + std::to_string(key.second));
        }
        if (n < 0) throw MalformedInputError("quantum_gas", "negative occupation");
    }
    if (total_ != count_sum()) {
        throw MalformedInputError("quantum_gas", "closure violated: declared total " +
                                                     std::to_string(total_) + " but occupations sum to " +
                                                     std::to_string(count_sum()));
    }
}

OccupationState GasOccupationState::vibrational_part() const {
    std::map<Level, Count> vib;
    for (const auto& [key, n] : occupations_) {
        if (key.first == 0) vib[key.second] += n;
    }
    return OccupationState(std::move(vib));
}

double translational_energy(Mode k, const GasParams& g) {
    const double kd = static_cast<double>(k);
    return g.translational_unit() * kd * kd;
}

double joint_energy(Mode k, Level q, const GasParams& g) {
    if (q < 0) throw MalformedInputError("quantum_gas", "negative level " + std::to_string(q));
    return translational_energy(k, g) + mode_energy(q, g.osc());
}

double effective_energy_gas(const GasOccupationState& occ, double mu, const GasParams& g) {
    occ.require_closed();
    double energy = 0.0;
    for (const auto& [key, n] : occ.occupations()) {
        energy += (joint_energy(key.first, key.second, g) - mu) * static_cast<double>(n);
    }
    return energy;
}

double effective_energy_gas_two_sum(const GasOccupationState& occ, double mu, const GasParams& g) {
    occ.require_closed();
    double energy = 0.0;
    for (const auto& [key, n] : occ.occupations()) {
        energy += joint_energy(key.first, key.second, g) * static_cast<double>(n);
    }
    return energy - mu * static_cast<double>(occ.count_sum());
}

double q_min_gas(double mu, Mode k, const GasParams& g) {
    const double quantum = g.osc().quantum();
    return mu / quantum - translational_energy(k, g) / quantum - 0.5;
}

std::vector<GasConditionRow> bose_gas_condition(double mu, const GasParams& g, IndexRange k_range) {
    std::vector<GasConditionRow> rows;
    rows.reserve(static_cast<std::size_t>(k_range.size()));
    for (Mode k = k_range.lo; k <= k_range.hi; ++k) {
        GasConditionRow row;
        row.k = k;
        row.translational_energy = translational_energy(k, g);
        row.extended_holds = joint_energy(k, 0, g) - mu > 0.0;
        row.classic_holds = row.translational_energy - mu > 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace oscstat
