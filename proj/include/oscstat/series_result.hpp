#pragma once

#include <cstdint>

namespace oscstat {

struct TruncationPolicy {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::int64_t max_terms = 10'000'000;

    void validate() const;

    /// max(rel_tol * |value|, abs_tol).
    [[nodiscard]] double target(double value) const noexcept;
};

/// Truncated infinite sum with a certified bound on the neglected remainder.
/// converged implies tail_bound <= policy.target(value).
struct SeriesResult {
    double value = 0.0;
    std::int64_t terms_used = 0;
    double tail_bound = 0.0;
    bool converged = false;
};

/// Upper bound on sum_{j >= 0} t_j given t_0 <= first and t_{j+1} <= ratio * t_j
/// for every j. Returns +inf when ratio >= 1.
[[nodiscard]] double geometric_tail(double first, double ratio) noexcept;

}  // namespace oscstat
