#pragma once

#include <cstdint>
#include <vector>

#include "oscstat/gas.hpp"
#include "oscstat/series_result.hpp"
#include "oscstat/statistics.hpp"

namespace oscstat {

/// Per-state weight multiplying the equilibrium occupation n_{k,q}.
enum class SeriesWeight {
    Energy,            // eps_k + hbar*omega*(q + 1/2)
    EffectiveEnergy,   // eps_k + hbar*omega*(q + 1/2) - mu
    ExcitationEnergy,  // eps_k + hbar*omega*q, the half quantum split off
    ParticleNumber,    // 1
};

/// sum_{k in Z} sum_{q >= 0} weight(k, q) * n_{k,q} with n_{k,q} the
/// Bose-Einstein or Fermi-Dirac occupation at (t.beta, t.mu).
///
/// Terms are accumulated shell by shell in r = k^2 + q (k and -k added as a
/// pair) until the certified bound on all remaining shells meets the policy.
/// Bose requires mu < hbar*omega/2, the lowest single-particle energy.
/// When max_terms is exhausted the partial value is returned with
/// converged = false and its (possibly infinite) tail bound.
[[nodiscard]] SeriesResult equilibrium_effective_energy(const Thermo& t, const GasParams& g, StatisticsKind kind,
                                                        const TruncationPolicy& policy = {},
                                                        SeriesWeight weight = SeriesWeight::Energy);

/// Same series summed over the rectangle |k| <= k_max, 0 <= q <= q_max, with a
/// certified bound on everything outside it. Used as an independent reference
/// for the shell summation. converged is set when the bound is finite.
[[nodiscard]] SeriesResult equilibrium_series_box(const Thermo& t, const GasParams& g, StatisticsKind kind,
                                                  SeriesWeight weight, Mode k_max, Level q_max);

/// 4*pi^4/3 + 16*pi^6/189 + 8*pi^8/315.
[[nodiscard]] double excitation_bound_constant();

/// e^{mu - 1/2} * excitation_bound_constant(): the upper bound on the excitation
/// series in reduced units (beta = hbar*omega = translational unit = 1).
[[nodiscard]] double lemma_b2_bound(double mu);

/// S(mu) = sum_{k in Z} sum_{q >= 0} (k^2 + q) / (e^{k^2+q} e^{1/2 - mu} -+ 1) in
/// reduced units, evaluated in the variable r = k^2 + q: every r collects the
/// 2*floor(sqrt(r)) + 1 values of k with k^2 <= r, all sharing the same term.
[[nodiscard]] SeriesResult s_series_numeric(double mu, StatisticsKind kind, const TruncationPolicy& policy = {});

/// Certified interval for a finite-precision quantity.
struct Enclosure {
    double lower = 0.0;
    double upper = 0.0;
};

/// sum_{r >= start} r^{-power} for power >= 2 and start >= 1: direct summation
/// of leading terms plus the integral bounds on the remainder, continued until
/// the enclosure width is below rel_tol of the value or max_terms is hit.
[[nodiscard]] Enclosure inverse_power_tail(int power, std::int64_t start, const TruncationPolicy& policy = {});

/// psi^{(3)}(a) = 3! * sum_{r >= a} r^{-4} for integer a >= 1.
[[nodiscard]] Enclosure polygamma3(std::int64_t a, const TruncationPolicy& policy = {});

struct ZetaCheck {
    int power = 0;
    double partial_sum = 0.0;  // sum_{r=1}^{R} r^{-power}
    double exact = 0.0;        // closed form in powers of pi
    double tail_bound = 0.0;   // 1/((p-1) R^{p-1})
    bool pass = false;
};

struct PolygammaCheck {
    std::int64_t k = 0;
    Enclosure tail;      // sum_{r >= k^2} r^{-4} = psi^{(3)}(k^2)/3!
    double bound = 0.0;  // (2/k^6 + 6/k^8)/6
    bool pass = false;
};

struct ExponentialCheck {
    double r = 0.0;
    double exp_r = 0.0;
    double power_term = 0.0;  // r^5/5!
    bool pass = false;
};

struct ProofCheckConfig {
    std::int64_t zeta_radius = 1000;
    std::int64_t polygamma_k_max = 20;
    double exp_grid_step = 0.5;
    double exp_grid_max = 50.0;
};

struct ProofReport {
    std::vector<ZetaCheck> zeta;
    std::vector<PolygammaCheck> polygamma;
    std::vector<ExponentialCheck> exponential;

    [[nodiscard]] bool zeta_pass() const noexcept;
    [[nodiscard]] bool polygamma_pass() const noexcept;
    [[nodiscard]] bool exponential_pass() const noexcept;
    [[nodiscard]] bool all_pass() const noexcept;
};

/// Numerically re-checks the ingredients of the convergence bound: zeta(4),
/// zeta(6), zeta(8) partial sums, the polygamma inequality
/// psi^{(3)}(x) <= 2/x^3 + 6/x^4 at x = k^2, and e^r >= r^5/5!.
[[nodiscard]] ProofReport verify_convergence_proof(const TruncationPolicy& policy = {},
                                                   const ProofCheckConfig& config = {});

}  // namespace oscstat
