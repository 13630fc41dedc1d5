#include "oscstat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

Count per_mode_max(StatisticsKind kind, Count cutoff) {
    return kind == StatisticsKind::Fermi ? 1 : cutoff;
}

}  // namespace

void ModeSet::validate() const {
    if (energies.empty()) throw MalformedInputError("fock_oracle", "mode set is empty");
    for (double e : energies) {
        if (!std::isfinite(e)) throw MalformedInputError("fock_oracle", "mode energies must be finite");
    }
}

ModeSet ModeSet::ladder(const OscillatorParams& p, Level q_max) {
    ModeSet modes;
    for (Level q = 0; q <= q_max; ++q) modes.energies.push_back(mode_energy(q, p));
    return modes;
}

Count Configuration::particles() const noexcept {
    Count n = 0;
    for (Count c : counts) n += c;
    return n;
}

double Configuration::energy(const ModeSet& modes) const {
    double e = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) e += modes.energies[i] * static_cast<double>(counts[i]);
    return e;
}

double Configuration::effective_energy(const ModeSet& modes, double mu) const {
    double e = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) e += (modes.energies[i] - mu) * static_cast<double>(counts[i]);
    return e;
}

std::int64_t configuration_count(std::size_t modes, StatisticsKind kind, Count cutoff) {
    if (cutoff < 0) throw MalformedInputError("fock_oracle", "cutoff must be >= 0");
    const Count base = per_mode_max(kind, cutoff) + 1;
    std::int64_t total = 1;
    for (std::size_t i = 0; i < modes; ++i) {
        if (total > kEnumerationCap / base) {
            throw EnumerationLimitError("fock_oracle", "enumeration of " + std::to_string(modes) + " modes with " +
                                                           std::to_string(base) + " states each exceeds the cap of " +
                                                           std::to_string(kEnumerationCap) + " configurations");
        }
        total *= base;
    }
    return total;
}

ConfigurationRange::ConfigurationRange(std::size_t modes, StatisticsKind kind, Count cutoff)
    : max_count_(per_mode_max(kind, cutoff)) {
    (void)configuration_count(modes, kind, cutoff);
    current_.counts.assign(modes, 0);
}

void ConfigurationRange::advance() {
    for (auto& c : current_.counts) {
        if (c < max_count_) {
            ++c;
            return;
        }
        c = 0;
    }
    exhausted_ = true;
}

ConfigurationRange::iterator& ConfigurationRange::iterator::operator++() {
    range_->advance();
    return *this;
}

ConfigurationRange enumerate_configurations(const ModeSet& m, StatisticsKind kind, Count cutoff) {
    m.validate();
    return ConfigurationRange(m.energies.size(), kind, cutoff);
}

std::vector<double> gc_average_occupation(const ModeSet& m, const Thermo& t, StatisticsKind kind, Count cutoff) {
    m.validate();
    t.validate();
    if (kind == StatisticsKind::Bose) {
        for (std::size_t i = 0; i < m.energies.size(); ++i) {
            if (!(t.beta * (m.energies[i] - t.mu) > 0.0)) {
                throw DomainError("fock_oracle", "Bose mode " + std::to_string(i) + " has energy <= mu");
            }
        }
    }
    // Pass 1: largest log-weight, factored out of every weight in pass 2.
    double max_log_weight = -std::numeric_limits<double>::infinity();
    for (const auto& cfg : enumerate_configurations(m, kind, cutoff)) {
        max_log_weight = std::max(max_log_weight, -t.beta * cfg.effective_energy(m, t.mu));
    }
    std::vector<double> weighted(m.energies.size(), 0.0);
    double partition = 0.0;
    for (const auto& cfg : enumerate_configurations(m, kind, cutoff)) {
        const double w = std::exp(-t.beta * cfg.effective_energy(m, t.mu) - max_log_weight);
        partition += w;
        for (std::size_t i = 0; i < weighted.size(); ++i) weighted[i] += static_cast<double>(cfg.counts[i]) * w;
    }
    for (double& v : weighted) v /= partition;
    return weighted;
}

GroundState ground_state_search(const ModeSet& m, double mu, StatisticsKind kind, Count cutoff) {
    m.validate();
    GroundState result;
    if (kind == StatisticsKind::Bose) {
        for (double e : m.energies) {
            if (e - mu < 0.0) {
                result.bounded = false;
                result.energy = -std::numeric_limits<double>::infinity();
                return result;
            }
        }
    }
    bool first = true;
    for (const auto& cfg : enumerate_configurations(m, kind, cutoff)) {
        const double e = cfg.effective_energy(m, mu);
        if (first || e < result.energy) {
            result.energy = e;
            result.argmin = cfg;
            first = false;
        }
    }
    return result;
}

}  // namespace oscstat
