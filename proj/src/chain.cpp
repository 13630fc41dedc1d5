#include "oscstat/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

void require_matching(const ChainAssignment& a, const ChainParams& ch) {
    ch.validate();
    if (a.size() != ch.count) {
        throw MalformedInputError("coupled_chain", "assignment has " + std::to_string(a.size()) +
                                                       " levels but the chain has " +
                                                       std::to_string(ch.count) + " oscillators");
    }
}

}  // namespace

void ChainParams::validate() const {
    if (count < 1) throw MalformedInputError("coupled_chain", "chain needs at least one oscillator");
    osc.validate();
    if (!(coupling >= 0.0)) throw MalformedInputError("coupled_chain", "coupling must be >= 0");
}

ChainAssignment::ChainAssignment(std::vector<Level> levels) : levels_(std::move(levels)) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (levels_[i] < 0) {
            throw MalformedInputError("coupled_chain", "negative level at mode " + std::to_string(i + 1));
        }
        groups_[levels_[i]].push_back(i + 1);
    }
}

std::span<const std::size_t> ChainAssignment::group(Level q) const {
    const auto it = groups_.find(q);
    if (it == groups_.end()) return {};
    return it->second;
}

OccupationState ChainAssignment::occupations() const {
    std::map<Level, Count> occ;
    for (const auto& [q, members] : groups_) occ[q] = static_cast<Count>(members.size());
    return OccupationState(std::move(occ));
}

std::vector<double> chain_frequencies(const ChainParams& ch) {
    ch.validate();
    const double n = static_cast<double>(ch.count);
    std::vector<double> freqs;
    freqs.reserve(ch.count);
    for (std::size_t s = 1; s <= ch.count; ++s) {
        // sin^2(pi s/N) = sin^2(pi (N-s)/N): fold s so omega_s == omega_{N-s} bit for bit
        // and s = N maps to exactly zero.
        const std::size_t folded = std::min(s, ch.count - s);
        const double sine = std::sin(std::numbers::pi * static_cast<double>(folded) / n);
        freqs.push_back(ch.osc.omega * std::sqrt(1.0 + 4.0 * ch.coupling * sine * sine));
    }
    return freqs;
}

double chain_energy(const ChainAssignment& a, const ChainParams& ch) {
    require_matching(a, ch);
    const auto freqs = chain_frequencies(ch);
    const auto levels = a.levels();
    double energy = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        energy += ch.osc.hbar * freqs[i] * (static_cast<double>(levels[i]) + 0.5);
    }
    return energy;
}

double chain_effective_energy(const ChainAssignment& a, double mu, const ChainParams& ch) {
    require_matching(a, ch);
    const auto freqs = chain_frequencies(ch);
    const auto levels = a.levels();
    double energy = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        energy += ch.osc.hbar * freqs[i] * (static_cast<double>(levels[i]) + 0.5) - mu;
    }
    return energy;
}

GroupedFormResult grouped_form_energy(const ChainAssignment& a, double mu, const ChainParams& ch) {
    require_matching(a, ch);
    const auto freqs = chain_frequencies(ch);
    GroupedFormResult result;
    double particles = 0.0;
    for (const auto& [q, members] : a.groups()) {
        double group_energy = 0.0;
        for (std::size_t s : members) group_energy += ch.osc.hbar * freqs[s - 1] * (static_cast<double>(q) + 0.5);
        const auto n_q = static_cast<double>(members.size());
        result.grouped += group_energy * n_q;
        particles += n_q;
        if (members.size() > 1) result.discrepancy = true;
    }
    result.grouped -= mu * particles;
    result.canonical = chain_effective_energy(a, mu, ch);
    return result;
}

double q_min_chain(double mu, Level q, const ChainAssignment& a, const ChainParams& ch) {
    require_matching(a, ch);
    const auto members = a.group(q);
    if (members.empty()) {
        throw DomainError("coupled_chain", "threshold undefined: no oscillator sits at level " + std::to_string(q));
    }
    const auto freqs = chain_frequencies(ch);
    double group_quantum = 0.0;
    for (std::size_t s : members) group_quantum += ch.osc.hbar * freqs[s - 1];
    return mu / group_quantum - 0.5;
}

}  // namespace oscstat
