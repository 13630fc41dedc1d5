#pragma once

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

#include "oscstat/spectra.hpp"
#include "oscstat/statistics.hpp"

namespace oscstat {

/// Finite set of single-particle energies, e.g. a truncated ladder.
struct ModeSet {
    std::vector<double> energies;

    void validate() const;

    /// hbar*omega*(q + 1/2) for q = 0..q_max.
    [[nodiscard]] static ModeSet ladder(const OscillatorParams& p, Level q_max);
};

/// Per-mode occupation numbers aligned with a ModeSet.
struct Configuration {
    std::vector<Count> counts;

    [[nodiscard]] Count particles() const noexcept;
    [[nodiscard]] double energy(const ModeSet& modes) const;           // sum_i eps_i n_i
    [[nodiscard]] double effective_energy(const ModeSet& modes, double mu) const;  // sum_i (eps_i - mu) n_i
    bool operator==(const Configuration&) const = default;
};

inline constexpr std::int64_t kEnumerationCap = 10'000'000;

/// (M+1)^modes for Bose, 2^modes for Fermi (cutoff ignored). Throws
/// EnumerationLimitError above kEnumerationCap.
[[nodiscard]] std::int64_t configuration_count(std::size_t modes, StatisticsKind kind, Count cutoff);

/// Every configuration exactly once, as an odometer with mode 0 varying fastest,
/// starting from the vacuum.
class ConfigurationRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Configuration;
        using difference_type = std::ptrdiff_t;
        using pointer = const Configuration*;
        using reference = const Configuration&;

        iterator() = default;
        reference operator*() const { return range_->current_; }
        pointer operator->() const { return &range_->current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(const iterator& other) const { return done() == other.done(); }

    private:
        friend class ConfigurationRange;
        explicit iterator(ConfigurationRange* range) : range_(range) {}
        [[nodiscard]] bool done() const { return range_ == nullptr || range_->exhausted_; }
        ConfigurationRange* range_ = nullptr;
    };

    ConfigurationRange(std::size_t modes, StatisticsKind kind, Count cutoff);

    iterator begin() { return iterator(this); }
    iterator end() { return iterator(); }

private:
    void advance();

    Count max_count_;
    Configuration current_;
    bool exhausted_ = false;
};

[[nodiscard]] ConfigurationRange enumerate_configurations(const ModeSet& m, StatisticsKind kind, Count cutoff);

/// Exact grand-canonical mean occupation of every mode on the truncated
/// space, by summing Boltzmann weights over all configurations.
[[nodiscard]] std::vector<double> gc_average_occupation(const ModeSet& m, const Thermo& t, StatisticsKind kind,
                                                        Count cutoff);

struct GroundState {
    bool bounded = true;
    double energy = 0.0;        // minimum of sum_i (eps_i - mu) n_i; meaningless when unbounded
    Configuration argmin;       // first minimiser in enumeration order
};

/// Brute-force minimum of the effective energy over all configurations,
/// the vacuum included. Bose sets with a mode below mu are reported as
/// unbounded without enumerating.
[[nodiscard]] GroundState ground_state_search(const ModeSet& m, double mu, StatisticsKind kind, Count cutoff);

}  // namespace oscstat
