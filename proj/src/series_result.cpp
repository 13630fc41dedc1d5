#include "oscstat/series_result.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oscstat/errors.hpp"

namespace oscstat {

void TruncationPolicy::validate() const {
    if (!(rel_tol > 0.0)) throw MalformedInputError("series_engine", "rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw MalformedInputError("series_engine", "abs_tol must be >= 0");
    if (max_terms < 1) throw MalformedInputError("series_engine", "max_terms must be >= 1");
}

double TruncationPolicy::target(double value) const noexcept {
    return std::max(rel_tol * std::abs(value), abs_tol);
}

double geometric_tail(double first, double ratio) noexcept {
    if (first <= 0.0) return 0.0;
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return first / (1.0 - std::max(ratio, 0.0));
}

}  // namespace oscstat
