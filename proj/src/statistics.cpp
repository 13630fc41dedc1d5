#include "oscstat/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

// Beyond this the e^{-x} form is used; e^{-30} ~ 1e-13 keeps the
// denominator correction well inside double precision.
constexpr double kSmallVariableThreshold = 30.0;

double bose_value(double x) {
    if (x > kSmallVariableThreshold) {
        const double y = std::exp(-x);
        return y / (1.0 - y);
    }
    return 1.0 / std::expm1(x);
}

double fermi_value(double x) {
    if (x > kSmallVariableThreshold) {
        const double y = std::exp(-x);
        return y / (1.0 + y);
    }
    return 1.0 / (std::exp(x) + 1.0);
}

}  // namespace

void Thermo::validate() const {
    if (!(beta > 0.0)) throw MalformedInputError("statistics", "beta must be > 0");
    if (!std::isfinite(mu)) throw MalformedInputError("statistics", "mu must be finite");
}

std::string_view to_string(StatisticsKind kind) noexcept {
    return kind == StatisticsKind::Bose ? "bose" : "fermi";
}

Occupation occupation_from_exponent(double x, StatisticsKind kind) {
    if (kind == StatisticsKind::Fermi) return {fermi_value(x), false};
    if (!(x > 0.0)) {
        throw DomainError("statistics", "Bose occupation undefined: beta*(energy - mu) = " + std::to_string(x) +
                                            " <= 0 (chemical potential must lie strictly below the level)");
    }
    return {bose_value(x), x < kNearDivergenceExponent};
}

std::optional<double> try_occupation_from_exponent(double x, StatisticsKind kind) noexcept {
    if (kind == StatisticsKind::Bose && !(x > 0.0)) return std::nullopt;
    return kind == StatisticsKind::Bose ? bose_value(x) : fermi_value(x);
}

double occupation_number(double energy, const Thermo& t, StatisticsKind kind) {
    t.validate();
    return occupation_from_exponent(t.beta * (energy - t.mu), kind).value;
}

SeriesResult mean_particle_number(const Thermo& t, const OscillatorParams& p, StatisticsKind kind,
                                  const TruncationPolicy& policy) {
    t.validate();
    p.validate();
    policy.validate();
    const double ground = mode_energy(0, p);
    if (kind == StatisticsKind::Bose && !(t.mu < ground)) {
        throw DomainError("statistics", "Bose mean particle number needs mu < hbar*omega/2 = " +
                                            std::to_string(ground) + ", got mu = " + std::to_string(t.mu));
    }
    // Beyond level Q every occupation is at most D e^{-x_q} with x_q growing by
    // beta*hbar*omega per level; D = 1 (Fermi) or 1/(1 - e^{-x_{Q+1}}) (Bose).
    const double ratio = std::exp(-t.beta * p.quantum());
    SeriesResult result;
    for (Level q = 0; result.terms_used < policy.max_terms; ++q) {
        const double x = t.beta * (mode_energy(q, p) - t.mu);
        result.value += occupation_from_exponent(x, kind).value;
        ++result.terms_used;

        const double x_next = t.beta * (mode_energy(q + 1, p) - t.mu);
        double first = std::exp(-x_next);
        if (kind == StatisticsKind::Bose) first /= -std::expm1(-x_next);
        result.tail_bound = geometric_tail(first, ratio);
        if (result.tail_bound <= policy.target(result.value)) {
            result.converged = true;
            break;
        }
    }
    return result;
}

BoseGasResult ideal_bose_gas(const Thermo& t, const GasParams& g, IndexRange k_range,
                             const TruncationPolicy& policy) {
    t.validate();
    policy.validate();
    if (k_range.size() == 0) throw MalformedInputError("statistics", "empty k range");

    auto exponent = [&](Mode k) { return t.beta * (translational_energy(k, g) - t.mu); };
    auto log_term = [](double x) { return -std::log1p(-std::exp(-x)); };

    BoseGasResult result;
    for (Mode k = k_range.lo; k <= k_range.hi; ++k) {
        const double x = exponent(k);
        if (!(x > 0.0)) {
            throw DomainError("statistics", "condition eps_k - mu > 0 violated at k = " + std::to_string(k));
        }
        result.log_partition += log_term(x);
        result.modes.push_back({k, translational_energy(k, g), occupation_from_exponent(x, StatisticsKind::Bose).value});
    }

    // Modes outside the range with |k| <= K are added exactly; beyond K each side
    // is a geometric tail: -log(1 - y) <= y/(1 - y_{K+1}) and y shrinks by at
    // least e^{-beta*unit*(2K+3)} per step.
    const Mode edge = std::max(std::abs(k_range.lo), std::abs(k_range.hi));
    constexpr double inf = std::numeric_limits<double>::infinity();
    double tail = 0.0;
    for (Mode k = -edge; k <= edge && tail < inf; ++k) {
        if (k_range.contains(k)) continue;
        const double x = exponent(k);
        tail = x > 0.0 ? tail + log_term(x) : inf;
    }
    const double x_edge = exponent(edge + 1);
    if (!(x_edge > 0.0)) {
        tail = inf;
    } else if (tail < inf) {
        const double first = std::exp(-x_edge) / -std::expm1(-x_edge);
        const double ratio = std::exp(-t.beta * g.translational_unit() * (2.0 * static_cast<double>(edge) + 3.0));
        tail += 2.0 * geometric_tail(first, ratio);
    }
    result.tail_bound = tail;
    result.tail_within_tolerance = tail <= policy.target(result.log_partition);
    return result;
}

ValidityReport remark_b1_check(const Thermo& t, const GasParams& g, IndexRange k_range, IndexRange q_range) {
    t.validate();
    if (q_range.lo < 0) throw MalformedInputError("statistics", "q range must start at a level >= 0");
    ValidityReport report;
    for (Mode k = k_range.lo; k <= k_range.hi; ++k) {
        const double threshold = q_min_gas(t.mu, k, g);
        for (Level q = q_range.lo; q <= q_range.hi; ++q) {
            const double excess = joint_energy(k, q, g) - t.mu;
            const auto occupation = try_occupation_from_exponent(t.beta * excess, StatisticsKind::Bose);
            const bool occupation_valid = occupation.has_value() && *occupation >= 0.0;
            const bool exponent_positive = excess > 0.0;
            const bool above_threshold = static_cast<double>(q) > threshold;
            ++report.points_checked;
            if (occupation_valid) ++report.valid_points;
            if (occupation_valid != exponent_positive || exponent_positive != above_threshold) {
                report.agree = false;
                report.mismatches.push_back({k, q});
            }
        }
    }
    return report;
}

}  // namespace oscstat
