#include "oscstat/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oscstat/errors.hpp"

namespace oscstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::int64_t isqrt(std::int64_t r) {
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(r)));
    while (s * s > r) --s;
    while ((s + 1) * (s + 1) <= r) ++s;
    return s;
}

double inverse_power(double r, int power) {
    const double inv = 1.0 / r;
    double out = 1.0;
    for (int i = 0; i < power; ++i) out *= inv;
    return out;
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

/// Linear bound |weight| <= slope * r + offset on shell r, plus the exact weight.
struct WeightModel {
    SeriesWeight weight;
    double mu;

    [[nodiscard]] double operator()(double translational, double vibrational_excitation, double half) const {
        switch (weight) {
            case SeriesWeight::Energy: return translational + vibrational_excitation + half;
            case SeriesWeight::EffectiveEnergy: return translational + vibrational_excitation + half - mu;
            case SeriesWeight::ExcitationEnergy: return translational + vibrational_excitation;
            case SeriesWeight::ParticleNumber: return 1.0;
        }
        return 0.0;
    }
};

void require_series_domain(const Thermo& t, const GasParams& g, StatisticsKind kind) {
    t.validate();
    const double ground = 0.5 * g.osc().quantum();
    if (kind == StatisticsKind::Bose && !(t.mu < ground)) {
        throw DomainError("series_engine", "Bose series needs mu < lowest single-particle energy " +
                                               std::to_string(ground) + ", got mu = " + std::to_string(t.mu));
    }
}

/// Prefactor D with n <= D e^{-x} for every state whose exponent is >= x_floor.
double occupation_prefactor(StatisticsKind kind, double x_floor) {
    if (kind == StatisticsKind::Fermi) return 1.0;
    return 1.0 / -std::expm1(-x_floor);
}

}  // namespace

SeriesResult equilibrium_effective_energy(const Thermo& t, const GasParams& g, StatisticsKind kind,
                                          const TruncationPolicy& policy, SeriesWeight weight) {
    require_series_domain(t, g, kind);
    policy.validate();

    const double unit = g.translational_unit();
    const double quantum = g.osc().quantum();
    const double half = 0.5 * quantum;
    const WeightModel model{weight, t.mu};

    // Shell r holds the states with k^2 + q = r, whose energy lies in
    // [m r + half, M r + half]; |weight| <= slope * r + offset there.
    const double m = std::min(unit, quantum);
    const double big_m = std::max(unit, quantum);
    double slope = big_m;
    double offset = 0.0;
    switch (weight) {
        case SeriesWeight::Energy: offset = half; break;
        case SeriesWeight::EffectiveEnergy: offset = half + std::abs(t.mu); break;
        case SeriesWeight::ExcitationEnergy: break;
        case SeriesWeight::ParticleNumber: slope = 0.0; offset = 1.0; break;
    }
    const double x_ground = t.beta * (half - t.mu);

    SeriesResult result;
    CompensatedSum total;
    for (std::int64_t r = 0;; ++r) {
        const std::int64_t k_top = isqrt(r);
        CompensatedSum shell;
        for (std::int64_t k = 0; k <= k_top; ++k) {
            const std::int64_t q = r - k * k;
            const double trans = translational_energy(k, g);
            const double vib = quantum * static_cast<double>(q);
            const double x = t.beta * (trans + vib + half - t.mu);
            const double term = model(trans, vib, half) * occupation_from_exponent(x, kind).value;
            shell.add(k == 0 ? term : 2.0 * term);
            result.terms_used += k == 0 ? 1 : 2;
        }
        total.add(shell.value());
        result.value = total.value();

        const double next = static_cast<double>(r + 1);
        const double x_floor = std::max(x_ground, t.beta * (m * next + half - t.mu));
        const double count = 2.0 * std::sqrt(next) + 1.0;
        const double first = count * (slope * next + offset) * occupation_prefactor(kind, x_floor) *
                             std::exp(-t.beta * (m * next + half - t.mu));
        const double ratio = (2.0 * std::sqrt(next + 1.0) + 1.0) / count *
                             ((slope * (next + 1.0) + offset) / (slope * next + offset)) * std::exp(-t.beta * m);
        result.tail_bound = geometric_tail(first, ratio);
        if (result.tail_bound <= policy.target(result.value)) {
            result.converged = true;
            break;
        }
        if (result.terms_used >= policy.max_terms) break;
    }
    return result;
}

SeriesResult equilibrium_series_box(const Thermo& t, const GasParams& g, StatisticsKind kind, SeriesWeight weight,
                                    Mode k_max, Level q_max) {
    require_series_domain(t, g, kind);
    if (k_max < 0 || q_max < 0) throw MalformedInputError("series_engine", "box cutoffs must be >= 0");

    const double unit = g.translational_unit();
    const double quantum = g.osc().quantum();
    const double half = 0.5 * quantum;
    const WeightModel model{weight, t.mu};

    SeriesResult result;
    CompensatedSum total;
    for (Mode k = -k_max; k <= k_max; ++k) {
        const double trans = translational_energy(k, g);
        for (Level q = 0; q <= q_max; ++q) {
            const double vib = quantum * static_cast<double>(q);
            const double x = t.beta * (trans + vib + half - t.mu);
            total.add(model(trans, vib, half) * occupation_from_exponent(x, kind).value);
            ++result.terms_used;
        }
    }
    result.value = total.value();

    // Outside the box n <= D e^{beta mu} e^{-beta eps_k} e^{-beta hbar omega (q + 1/2)}
    // and |weight| <= a*eps_k + b*hbar*omega*(q + 1/2) + c, so every region
    // A x B is bounded by sums over k and over q separately.
    double a = 1.0, b = 1.0, c = 0.0;
    if (weight == SeriesWeight::EffectiveEnergy) c = std::abs(t.mu);
    if (weight == SeriesWeight::ParticleNumber) a = b = 0.0, c = 1.0;

    const double d = occupation_prefactor(kind, t.beta * (half - t.mu)) * std::exp(t.beta * t.mu);

    // Sums over q: y = e^{-beta hbar omega}, terms y^{q + 1/2} and hbar*omega*(q + 1/2) y^{q + 1/2}.
    const double y = std::exp(-t.beta * quantum);
    const double sqrt_y = std::exp(-0.5 * t.beta * quantum);
    const double one_minus_y = -std::expm1(-t.beta * quantum);
    auto q_sums_from = [&](double n) {
        // sum_{j >= n} y^j and sum_{j >= n} j y^j
        const double yn = std::pow(y, n);
        const double s0 = yn / one_minus_y;
        const double s1 = yn * (n - (n - 1.0) * y) / (one_minus_y * one_minus_y);
        return std::pair{sqrt_y * s0, quantum * sqrt_y * (s1 + 0.5 * s0)};
    };
    const auto [q0_all, q1_all] = q_sums_from(0.0);
    const auto [q0_out, q1_out] = q_sums_from(static_cast<double>(q_max) + 1.0);

    // Sums over k: inside the box explicitly, outside by geometric tails.
    double k0_in = 0.0, k1_in = 0.0;
    for (Mode k = -k_max; k <= k_max; ++k) {
        const double eps = translational_energy(k, g);
        const double w = std::exp(-t.beta * eps);
        k0_in += w;
        k1_in += eps * w;
    }
    const double kn = static_cast<double>(k_max) + 1.0;
    const double eps_n = unit * kn * kn;
    const double step = std::exp(-t.beta * unit * (2.0 * kn + 1.0));
    const double k0_out = 2.0 * geometric_tail(std::exp(-t.beta * eps_n), step);
    const double k1_out =
        2.0 * geometric_tail(eps_n * std::exp(-t.beta * eps_n), ((kn + 1.0) / kn) * ((kn + 1.0) / kn) * step);

    auto region = [&](double k0, double k1, double q0, double q1) { return d * (a * k1 * q0 + b * k0 * q1 + c * k0 * q0); };
    const double tail = region(k0_out, k1_out, q0_all, q1_all) + region(k0_in, k1_in, q0_out, q1_out);
    result.tail_bound = std::isnan(tail) ? kInf : tail;
    result.converged = std::isfinite(result.tail_bound);
    return result;
}

double excitation_bound_constant() {
    constexpr double pi = std::numbers::pi;
    const double pi4 = std::pow(pi, 4);
    const double pi6 = std::pow(pi, 6);
    const double pi8 = std::pow(pi, 8);
    return 4.0 * pi4 / 3.0 + 16.0 * pi6 / 189.0 + 8.0 * pi8 / 315.0;
}

double lemma_b2_bound(double mu) {
    return std::exp(mu - 0.5) * excitation_bound_constant();
}

SeriesResult s_series_numeric(double mu, StatisticsKind kind, const TruncationPolicy& policy) {
    policy.validate();
    if (!std::isfinite(mu)) throw MalformedInputError("series_engine", "mu must be finite");
    if (kind == StatisticsKind::Bose && !(mu < 0.5)) {
        throw DomainError("series_engine", "Bose series needs mu < 1/2 in reduced units, got mu = " + std::to_string(mu));
    }
    const double c = std::exp(0.5 - mu);
    const double sign = kind == StatisticsKind::Bose ? -1.0 : 1.0;

    // r e^{-r} / (C -+ e^{-r}) == r / (C e^r -+ 1) without overflow.
    auto term = [&](double r) {
        const double decay = std::exp(-r);
        return r * decay / (c + sign * decay);
    };

    SeriesResult result;
    CompensatedSum total;
    for (std::int64_t r = 0;; ++r) {
        // k = 0 contributes once, each k = 1..floor(sqrt r) twice (the +-k pair).
        const auto multiplicity = static_cast<double>(2 * isqrt(r) + 1);
        total.add(multiplicity * term(static_cast<double>(r)));
        result.terms_used += 2 * isqrt(r) + 1;
        result.value = total.value();

        // For r' >= R + 1: term <= (2 sqrt r' + 1) r' e^{-r'} / C' with
        // C' = C (Fermi) or C - e^{-(R+1)} (Bose).
        const double next = static_cast<double>(r + 1);
        const double denominator = kind == StatisticsKind::Bose ? c - std::exp(-next) : c;
        const double count = 2.0 * std::sqrt(next) + 1.0;
        const double first = count * next * std::exp(-next) / denominator;
        const double ratio = (2.0 * std::sqrt(next + 1.0) + 1.0) / count * ((next + 1.0) / next) * std::exp(-1.0);
        result.tail_bound = denominator > 0.0 ? geometric_tail(first, ratio) : kInf;
        if (result.tail_bound <= policy.target(result.value)) {
            result.converged = true;
            break;
        }
        if (result.terms_used >= policy.max_terms) break;
    }
    return result;
}

Enclosure inverse_power_tail(int power, std::int64_t start, const TruncationPolicy& policy) {
    if (power < 2) throw MalformedInputError("series_engine", "inverse_power_tail needs power >= 2");
    if (start < 1) throw MalformedInputError("series_engine", "inverse_power_tail needs start >= 1");
    policy.validate();

    const double p = static_cast<double>(power);
    // Remainder after summing r = start .. R-1 lies in
    // [1/((p-1) R^{p-1}), 1/((p-1) (R-1)^{p-1})].
    auto integral = [&](double from) { return 1.0 / ((p - 1.0) * std::pow(from, p - 1.0)); };

    // Choose the number of explicit terms first, then sum smallest-first.
    std::int64_t terms = 1;
    const double leading = inverse_power(static_cast<double>(start), power);
    while (terms < policy.max_terms) {
        const double end = static_cast<double>(start + terms);
        if (integral(end - 1.0) - integral(end) <= policy.rel_tol * leading) break;
        terms = std::min(policy.max_terms, terms * 2);
    }
    CompensatedSum sum;
    for (std::int64_t r = start + terms - 1; r >= start; --r) sum.add(inverse_power(static_cast<double>(r), power));
    const double end = static_cast<double>(start + terms);
    const double rounding = 4.0 * kEps * sum.value();
    return {sum.value() + integral(end) - rounding, sum.value() + integral(end - 1.0) + rounding};
}

Enclosure polygamma3(std::int64_t a, const TruncationPolicy& policy) {
    const Enclosure tail = inverse_power_tail(4, a, policy);
    return {6.0 * tail.lower, 6.0 * tail.upper};
}

bool ProofReport::zeta_pass() const noexcept {
    return !zeta.empty() && std::all_of(zeta.begin(), zeta.end(), [](const auto& c) { return c.pass; });
}

bool ProofReport::polygamma_pass() const noexcept {
    return !polygamma.empty() && std::all_of(polygamma.begin(), polygamma.end(), [](const auto& c) { return c.pass; });
}

bool ProofReport::exponential_pass() const noexcept {
    return !exponential.empty() &&
           std::all_of(exponential.begin(), exponential.end(), [](const auto& c) { return c.pass; });
}

bool ProofReport::all_pass() const noexcept {
    return zeta_pass() && polygamma_pass() && exponential_pass();
}

ProofReport verify_convergence_proof(const TruncationPolicy& policy, const ProofCheckConfig& config) {
    policy.validate();
    if (config.zeta_radius < 1 || config.polygamma_k_max < 1 || !(config.exp_grid_step > 0.0)) {
        throw MalformedInputError("series_engine", "invalid proof check configuration");
    }
    ProofReport report;
    constexpr double pi = std::numbers::pi;

    // (a) partial sums of zeta(p) against pi^p / c with the integral remainder bound.
    const struct {
        int power;
        double exact;
    } zetas[] = {{4, std::pow(pi, 4) / 90.0}, {6, std::pow(pi, 6) / 945.0}, {8, std::pow(pi, 8) / 9450.0}};
    const double radius = static_cast<double>(config.zeta_radius);
    for (const auto& z : zetas) {
        CompensatedSum sum;
        for (std::int64_t r = config.zeta_radius; r >= 1; --r) sum.add(inverse_power(static_cast<double>(r), z.power));
        ZetaCheck check;
        check.power = z.power;
        check.partial_sum = sum.value();
        check.exact = z.exact;
        check.tail_bound = 1.0 / ((z.power - 1) * std::pow(radius, z.power - 1));
        // The closed form and the partial sum each carry a few ulps of rounding.
        const double rounding = 8.0 * kEps * z.exact;
        const double gap = check.exact - check.partial_sum;
        check.pass = gap >= -rounding && gap <= check.tail_bound + rounding;
        report.zeta.push_back(check);
    }

    // (b) sum_{r >= k^2} r^{-4} = psi^{(3)}(k^2)/3! <= (2/k^6 + 6/k^8)/6.
    for (std::int64_t k = 1; k <= config.polygamma_k_max; ++k) {
        PolygammaCheck check;
        check.k = k;
        check.tail = inverse_power_tail(4, k * k, policy);
        const double kd = static_cast<double>(k);
        check.bound = (2.0 / std::pow(kd, 6) + 6.0 / std::pow(kd, 8)) / 6.0;
        check.pass = check.tail.upper <= check.bound;
        report.polygamma.push_back(check);
    }

    // (c) e^r >= r^5/5! on a uniform grid.
    const auto steps = static_cast<std::int64_t>(std::floor(config.exp_grid_max / config.exp_grid_step + 1e-9));
    for (std::int64_t i = 0; i <= steps; ++i) {
        ExponentialCheck check;
        check.r = static_cast<double>(i) * config.exp_grid_step;
        check.exp_r = std::exp(check.r);
        check.power_term = std::pow(check.r, 5) / 120.0;
        check.pass = check.exp_r >= check.power_term;
        report.exponential.push_back(check);
    }
    return report;
}

}  // namespace oscstat
