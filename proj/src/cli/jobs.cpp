#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "oscstat/chain.hpp"
#include "oscstat/gas.hpp"
#include "oscstat/open_system.hpp"
#include "oscstat/oracle.hpp"
#include "oscstat/series.hpp"
#include "oscstat/statistics.hpp"
#include "schema.hpp"

namespace oscstat::cli {

using nlohmann::json;
using detail::integer;
using detail::real;
using detail::text;

namespace {

constexpr std::string_view kToolVersion = "1.0.0";

OscillatorParams oscillator(const json& params) {
    return {real(params, "hbar"), real(params, "mass"), real(params, "omega")};
}

TruncationPolicy truncation(const json& params) {
    return {real(params, "rel_tol"), real(params, "abs_tol"), integer(params, "max_terms")};
}

StatisticsKind statistics_kind(const json& params) {
    return text(params, "stat") == "bose" ? StatisticsKind::Bose : StatisticsKind::Fermi;
}

using Summary = std::vector<std::pair<std::string, Cell>>;

void require_converged(const SeriesResult& r, std::string_view origin, std::string_view what) {
    if (!r.converged) {
        throw ConvergenceError(std::string(origin), std::string(what) + " did not converge within max_terms (value " +
                                                        format_double(r.value) + ", tail bound " +
                                                        format_double(r.tail_bound) + ")");
    }
}

Report spectrum_report(const json& params) {
    const auto p = oscillator(params);
    const double mu = real(params, "mu");
    const double epsilon = real(params, "epsilon");
    Report report;
    report.columns = {"q", "energy", "omega_eff", "accessible"};
    for (Level q = 0; q <= integer(params, "qmax"); ++q) {
        Cell accessible;
        switch (classify_level(q, mu, p, epsilon)) {
            case Accessibility::Accessible: accessible = true; break;
            case Accessibility::Inaccessible: accessible = false; break;
            case Accessibility::Boundary: accessible = std::string("boundary"); break;
        }
        report.rows.push_back({q, mode_energy(q, p), effective_frequency(q, mu, p), accessible});
    }
    report.summaries.push_back({"", Summary{{"q_min", q_min_vibrational(mu, p)}}});
    return report;
}

Report gas_report(const json& params) {
    const auto osc = oscillator(params);
    const GasParams g = params.at("trans_unit").is_null()
                            ? GasParams(osc, real(params, "box_length"))
                            : GasParams::with_translational_unit(osc, real(params, "trans_unit"));
    const double mu = real(params, "mu");
    const Mode kmax = integer(params, "kmax");
    Report report;
    report.columns = {"k", "q", "energy", "effective_term", "q_min_k"};
    for (Mode k = -kmax; k <= kmax; ++k) {
        const double threshold = q_min_gas(mu, k, g);
        for (Level q = 0; q <= integer(params, "qmax"); ++q) {
            const double e = joint_energy(k, q, g);
            report.rows.push_back({k, q, e, e - mu, threshold});
        }
    }
    Summary summary{{"translational_unit", g.translational_unit()}};
    for (const auto& row : bose_gas_condition(mu, g, {-kmax, kmax})) {
        if (row.gap()) summary.emplace_back("condition_gap_k" + std::to_string(row.k), true);
    }
    report.summaries.push_back({"", summary});
    return report;
}

Report chain_report(const json& params) {
    const ChainParams ch{static_cast<std::size_t>(integer(params, "n")), oscillator(params), real(params, "coupling")};
    auto levels = params.at("levels").get<std::vector<Level>>();
    if (levels.empty()) levels.assign(ch.count, 0);
    const ChainAssignment a(levels);
    const double mu = real(params, "mu");

    Report report;
    report.columns = {"s", "omega_s"};
    const auto freqs = chain_frequencies(ch);
    for (std::size_t s = 1; s <= freqs.size(); ++s) report.rows.push_back({static_cast<std::int64_t>(s), freqs[s - 1]});

    const auto grouped = grouped_form_energy(a, mu, ch);
    report.summaries.push_back({"", Summary{
        {"chain_energy", chain_energy(a, ch)},
        {"chain_effective_energy", chain_effective_energy(a, mu, ch)},
        {"grouped_form_energy", grouped.grouped},
        {"grouped_discrepancy", grouped.discrepancy},
    }});
    return report;
}

Report stats_report(const json& params) {
    const auto p = oscillator(params);
    const Thermo t{real(params, "beta"), real(params, "mu")};
    const auto kind = statistics_kind(params);
    const auto mean = mean_particle_number(t, p, kind, truncation(params));
    require_converged(mean, "statistics", "mean particle number");

    Report report;
    report.columns = {"level", "occupation"};
    bool near_divergence = false;
    for (Level q = 0; q <= integer(params, "qmax"); ++q) {
        const auto occ = occupation_from_exponent(t.beta * (mode_energy(q, p) - t.mu), kind);
        near_divergence = near_divergence || occ.near_divergence;
        report.rows.push_back({q, occ.value});
    }
    report.summaries.push_back({"", Summary{
        {"mean_particle_number", mean.value},
        {"tail_bound", mean.tail_bound},
        {"terms_used", mean.terms_used},
        {"near_divergence", near_divergence},
    }});
    return report;
}

Report bounds_report(const json& params) {
    const double mu = real(params, "mu");
    const auto s = s_series_numeric(mu, statistics_kind(params), truncation(params));
    require_converged(s, "series_engine", "S series");
    const double bound = lemma_b2_bound(mu);
    Report report;
    report.columns = {"mu", "S_numeric", "tail_bound", "lemma_bound", "pass"};
    report.rows.push_back({mu, s.value, s.tail_bound, bound, s.value + s.tail_bound <= bound});
    return report;
}

Report oracle_report(const json& params) {
    const auto p = oscillator(params);
    const Thermo t{real(params, "beta"), real(params, "mu")};
    const auto kind = statistics_kind(params);
    ModeSet modes;
    if (!params.at("energies").empty()) {
        modes.energies = params.at("energies").get<std::vector<double>>();
    } else {
        modes = ModeSet::ladder(p, integer(params, "qmax"));
    }
    const auto oracle = gc_average_occupation(modes, t, kind, integer(params, "cutoff"));
    Report report;
    report.columns = {"mode", "closed_form", "oracle_value", "abs_error"};
    for (std::size_t i = 0; i < modes.energies.size(); ++i) {
        const double closed = occupation_number(modes.energies[i], t, kind);
        report.rows.push_back({static_cast<std::int64_t>(i), closed, oracle[i], std::abs(oracle[i] - closed)});
    }
    const auto ground = ground_state_search(modes, t.mu, kind, integer(params, "cutoff"));
    Summary summary{{"ground_state_bounded", ground.bounded}};
    if (ground.bounded) {
        summary.emplace_back("ground_state_energy", ground.energy);
        std::string occupied;
        for (std::size_t i = 0; i < ground.argmin.counts.size(); ++i) {
            if (ground.argmin.counts[i] == 0) continue;
            if (!occupied.empty()) occupied += ' ';
            occupied += std::to_string(i) + ':' + std::to_string(ground.argmin.counts[i]);
        }
        summary.emplace_back("ground_state_occupied", occupied);
    }
    report.summaries.push_back({"", summary});
    return report;
}

Report single_report(JobKind kind, const json& params) {
    switch (kind) {
        case JobKind::Spectrum: return spectrum_report(params);
        case JobKind::Gas: return gas_report(params);
        case JobKind::Chain: return chain_report(params);
        case JobKind::Stats: return stats_report(params);
        case JobKind::Bounds: return bounds_report(params);
        case JobKind::Oracle: return oracle_report(params);
        case JobKind::Sweep: break;
    }
    throw ConfigError("sweeps cannot be nested");
}

/// Grid points are evaluated concurrently in batches; results are kept in
/// grid order so the assembled report does not depend on scheduling.
Report sweep_report(const json& params) {
    const auto inner = *detail::kind_from_string(text(params, "job"));
    const std::string param = text(params, "param");
    const auto grid = detail::sweep_grid(params);
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());

    std::vector<Report> parts(grid.size());
    for (std::size_t start = 0; start < grid.size(); start += workers) {
        std::vector<std::future<Report>> batch;
        for (std::size_t i = start; i < std::min(grid.size(), start + workers); ++i) {
            batch.push_back(std::async(std::launch::async,
                                       [&, i] { return single_report(inner, detail::sweep_point(params, grid[i])); }));
        }
        for (std::size_t j = 0; j < batch.size(); ++j) parts[start + j] = batch[j].get();
    }

    // A kind that already reports the swept parameter keeps its own column.
    const bool prepend = parts.empty() || std::find(parts[0].columns.begin(), parts[0].columns.end(), param) ==
                                              parts[0].columns.end();
    Report report;
    if (prepend) report.columns.push_back(param);
    if (!parts.empty()) report.columns.insert(report.columns.end(), parts[0].columns.begin(), parts[0].columns.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (auto& row : parts[i].rows) {
            if (prepend) row.insert(row.begin(), grid[i]);
            report.rows.push_back(std::move(row));
        }
        for (auto& [label, values] : parts[i].summaries) {
            report.summaries.push_back({param + "=" + format_double(grid[i]), std::move(values)});
        }
    }
    return report;
}

}  // namespace

Report run_job(const Job& job) {
    Report report = job.kind == JobKind::Sweep ? sweep_report(job.params) : single_report(job.kind, job.params);
    report.kind = job.kind;
    report.metadata = job.params;
    report.metadata["kind"] = std::string(to_string(job.kind));
    report.metadata["tool"] = "oscstat";
    report.metadata["version"] = std::string(kToolVersion);
    return report;
}

}  // namespace oscstat::cli
