#include "oscstat/open_system.hpp"

#include <cmath>
#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

void require_level(Level q) {
    if (q < 0) throw MalformedInputError("open_system", "negative level " + std::to_string(q));
}

}  // namespace

double effective_frequency(Level q, double mu, const OscillatorParams& p) {
    require_level(q);
    return mode_energy(q, p) - mu;
}

double q_min_vibrational(double mu, const OscillatorParams& p) {
    return mu / p.quantum() - 0.5;
}

Accessibility classify_level(Level q, double mu, const OscillatorParams& p, double tolerance) {
    const double w = effective_frequency(q, mu, p);
    if (tolerance > 0.0 && std::abs(w) <= tolerance) return Accessibility::Boundary;
    return w > 0.0 ? Accessibility::Accessible : Accessibility::Inaccessible;
}

AccessibleSet accessible_set(double mu, const OscillatorParams& p, Level q_max, double tolerance) {
    AccessibleSet set;
    set.q_min = q_min_vibrational(mu, p);
    for (Level q = 0; q <= q_max; ++q) {
        switch (classify_level(q, mu, p, tolerance)) {
            case Accessibility::Accessible: set.accessible.push_back(q); break;
            case Accessibility::Inaccessible: set.inaccessible.push_back(q); break;
            case Accessibility::Boundary: set.boundary.push_back(q); break;
        }
    }
    return set;
}

double effective_energy_vibrational(const OccupationState& occ, double mu, const OscillatorParams& p) {
    occ.require_closed();
    double energy = 0.0;
    for (const auto& [q, n] : occ.occupations()) {
        energy += (mode_energy(q, p) - mu) * static_cast<double>(n);
    }
    return energy;
}

double effective_energy_vibrational_two_sum(const OccupationState& occ, double mu,
                                            const OscillatorParams& p) {
    return ensemble_energy(occ, p) - mu * static_cast<double>(occ.count_sum());
}

PositivityReport positivity_check(const OccupationState& occ, double mu, const OscillatorParams& p) {
    PositivityReport report;
    report.effective_energy = effective_energy_vibrational(occ, mu, p);
    report.positive = report.effective_energy > 0.0;
    for (const auto& [q, n] : occ.occupations()) {
        if (effective_frequency(q, mu, p) <= 0.0) report.offending_levels.push_back(q);
    }
    return report;
}

FermionClass classify_fermion_state(Level q, double mu, const OscillatorParams& p) {
    require_level(q);
    return mode_energy(q, p) < mu ? FermionClass::Bound : FermionClass::Exchangeable;
}

}  // namespace oscstat
