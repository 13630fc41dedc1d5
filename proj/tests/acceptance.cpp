// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "oscstat/chain.hpp"
#include "oscstat/gas.hpp"
#include "oscstat/open_system.hpp"
#include "oscstat/oracle.hpp"
#include "oscstat/series.hpp"
#include "oscstat/statistics.hpp"
#include "reference.hpp"

using namespace oscstat;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> check;
};

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

Outcome bound_holds() {
    Outcome out;
    double worst = 0.0;
    double slowest = 0.0;
    auto probe = [&](double mu, StatisticsKind kind) {
        const auto start = std::chrono::steady_clock::now();
        const auto r = s_series_numeric(mu, kind, {1e-10, 1e-14, 10'000'000});
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        const double bound = lemma_b2_bound(mu);
        worst = std::max(worst, (r.value + r.tail_bound) / bound);
        if (!r.converged || !(r.value + r.tail_bound <= bound)) {
            out.pass = false;
            out.detail += " violated at " + std::string(to_string(kind)) + " mu=" + fmt(mu) + ";";
        }
    };
    for (double mu : {-2.0, -1.0, 0.0, 0.4}) probe(mu, StatisticsKind::Bose);
    for (double mu : {-1.0, 0.0, 1.0, 2.0}) probe(mu, StatisticsKind::Fermi);
    if (slowest >= 1.0) out.pass = false;
    out.detail += " max (S+tail)/bound=" + fmt(worst) + ", slowest " + fmt(slowest) + " s";
    return out;
}

Outcome validity_equivalence() {
    Outcome out;
    std::int64_t points = 0;
    std::int64_t mismatches = 0;
    for (double mu : {-1.0, 0.0, 0.3, 0.5, 1.0, 2.5}) {
        const auto r = remark_b1_check({1.0, mu}, GasParams::reduced(), {-50, 50}, {0, 100});
        points += r.points_checked;
        mismatches += static_cast<std::int64_t>(r.mismatches.size());
    }
    out.pass = mismatches == 0 && points == 6 * 101 * 101;
    out.detail = " " + std::to_string(points) + " points, " + std::to_string(mismatches) + " mismatches";
    return out;
}

Outcome fermi_oracle() {
    Outcome out;
    double worst = 0.0;
    const auto modes = ModeSet::ladder({}, 4);
    for (double mu : {-1.0, 0.0, 1.6}) {
        const Thermo t{1.0, mu};
        const auto means = gc_average_occupation(modes, t, StatisticsKind::Fermi, 1);
        for (std::size_t i = 0; i < means.size(); ++i) {
            worst = std::max(worst, std::abs(means[i] - occupation_number(modes.energies[i], t, StatisticsKind::Fermi)));
        }
    }
    out.pass = worst < 1e-12;
    out.detail = " max abs error " + fmt(worst);
    return out;
}

Outcome bose_oracle() {
    Outcome out;
    double worst = 0.0;
    for (double x : {0.5, std::exp(-0.5), std::exp(-2.0)}) {
        const double eps = -std::log(x);
        const Thermo t{1.0, 0.0};
        const double mean = gc_average_occupation(ModeSet{{eps}}, t, StatisticsKind::Bose, 60)[0];
        worst = std::max(worst, std::abs(mean - occupation_number(eps, t, StatisticsKind::Bose)));
    }
    out.pass = worst < 1e-10;
    out.detail = " max abs error " + fmt(worst);
    return out;
}

Outcome chain_decoupling() {
    Outcome out;
    auto gen = ref::rng(2024);
    std::uniform_int_distribution<Level> level(0, 15);
    std::uniform_real_distribution<double> mu_dist(-3.0, 8.0);
    double worst = 0.0;
    int trials = 0;
    for (std::size_t n : {1u, 2u, 5u}) {
        for (int i = 0; i < 1000; ++i, ++trials) {
            std::vector<Level> levels(n);
            for (auto& q : levels) q = level(gen);
            const ChainAssignment a(levels);
            const ChainParams ch{n, {}, 0.0};
            const double mu = mu_dist(gen);
            const double chain = chain_effective_energy(a, mu, ch);
            const double vib = effective_energy_vibrational(a.occupations(), mu, ch.osc);
            const double scale = chain_energy(a, ch) + std::abs(mu) * static_cast<double>(n);
            worst = std::max(worst, std::abs(chain - vib) / scale);
        }
    }
    out.pass = worst < 1e-14;
    out.detail = " " + std::to_string(trials) + " assignments, max relative difference " + fmt(worst);
    return out;
}

Outcome grouped_form() {
    const ChainParams ch{2, {}, 0.0};
    const auto shared = grouped_form_energy(ChainAssignment({0, 0}), 0.2, ch);
    const auto split = grouped_form_energy(ChainAssignment({0, 1}), 0.2, ch);
    Outcome out;
    out.pass = std::abs(shared.canonical - 0.6) < 1e-15 && std::abs(shared.grouped - 1.6) < 1e-15 &&
               shared.discrepancy && split.grouped == split.canonical && !split.discrepancy;
    out.detail = " shared: canonical=" + fmt(shared.canonical) + " grouped=" + fmt(shared.grouped) +
                 "; split: canonical=" + fmt(split.canonical) + " grouped=" + fmt(split.grouped);
    return out;
}

Outcome ground_states() {
    const auto modes = ModeSet::ladder({}, 4);
    const auto fermi = ground_state_search(modes, 1.6, StatisticsKind::Fermi, 1);
    bool matches_bound = true;
    for (Level q = 0; q <= 4; ++q) {
        const bool bound = classify_fermion_state(q, 1.6, {}) == FermionClass::Bound;
        matches_bound = matches_bound && ((fermi.argmin.counts[q] == 1) == bound);
    }
    const auto bose_high = ground_state_search(modes, 1.6, StatisticsKind::Bose, 10);
    const auto bose_low = ground_state_search(modes, 0.3, StatisticsKind::Bose, 10);
    Outcome out;
    out.pass = fermi.bounded && fermi.argmin.counts == std::vector<Count>{1, 1, 0, 0, 0} &&
               std::abs(fermi.energy + 1.2) <= 1e-12 && matches_bound && !bose_high.bounded && bose_low.bounded &&
               bose_low.argmin.particles() == 0 && bose_low.energy == 0.0;
    out.detail = " fermi E=" + fmt(fermi.energy) + ", bose(1.6) " + (bose_high.bounded ? "bounded" : "unbounded") +
                 ", bose(0.3) E=" + fmt(bose_low.energy);
    return out;
}

Outcome proof_estimates() {
    const auto start = std::chrono::steady_clock::now();
    const auto r = verify_convergence_proof();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Outcome out;
    out.pass = r.zeta_pass() && r.polygamma_pass() && r.exponential_pass() && r.zeta.size() == 3 &&
               r.polygamma.size() == 20 && seconds < 1.0;
    out.detail = std::string(" zeta ") + (r.zeta_pass() ? "ok" : "fail") + ", polygamma " +
                 (r.polygamma_pass() ? "ok" : "fail") + ", exponential " + (r.exponential_pass() ? "ok" : "fail") +
                 ", " + fmt(seconds) + " s";
    return out;
}

Outcome mean_particle() {
    // Fixed beforehand: 30 terms plus geometric tail, long double.
    const auto reference = ref::mean_particle_number(1.0, 1.0, 0.0, false, 30);
    const auto r = mean_particle_number({1.0, 0.0}, {}, StatisticsKind::Fermi);
    Outcome out;
    out.pass = r.converged && std::abs(r.value - 0.6826) <= 1e-3 &&
               std::abs(r.value - static_cast<double>(reference.value)) <= r.tail_bound + static_cast<double>(reference.tail);
    out.detail = " value " + fmt(r.value) + ", reference " + fmt(static_cast<double>(reference.value));
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism(const std::string& tool) {
    Outcome out;
    if (tool.empty()) return {false, " tool path not given"};
    const auto dir = std::filesystem::temp_directory_path() / "oscstat_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::string> jobs = {
        "spectrum --mu 2.5 --qmax 10",
        "gas --mu 0.3 --kmax 4 --qmax 6",
        "chain --n 5 --coupling 0.5 --mu 1 --levels 0,1,1,2,0",
        "stats --stat fermi --mu 0.4 --qmax 12",
        "bounds --stat bose --mu 0.4",
        "oracle --stat fermi --mu 1.6 --qmax 4",
        "sweep --job stats --param mu --from -2 --to 0.4 --steps 16 --stat bose",
    };
    int compared = 0;
    for (const auto& format : {"csv", "json"}) {
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            std::string first;
            for (int rep = 0; rep < 2; ++rep) {
                const auto path = dir / ("job" + std::to_string(j) + "_" + std::to_string(rep) + "." + format);
                const std::string cmd = "\"" + tool + "\" " + jobs[j] + " --format " + format + " --out \"" +
                                        path.string() + "\"";
                if (std::system(cmd.c_str()) != 0) {
                    out.pass = false;
                    out.detail += " failed: " + jobs[j] + ";";
                    continue;
                }
                const auto bytes = slurp(path);
                if (rep == 0) {
                    first = bytes;
                } else if (bytes != first || bytes.empty()) {
                    out.pass = false;
                    out.detail += " differs: " + jobs[j] + ";";
                }
            }
            ++compared;
        }
    }
    std::filesystem::remove_all(dir);
    out.detail += " " + std::to_string(compared) + " job outputs compared";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string tool = argc > 1 ? argv[1] : "";
    const std::vector<Criterion> criteria = {
        {1, "excitation series below its closed-form bound", bound_holds},
        {2, "occupation validity equals the gas threshold on the grid", validity_equivalence},
        {3, "fermi enumeration matches closed form", fermi_oracle},
        {4, "bose enumeration converges at cutoff 60", bose_oracle},
        {5, "decoupled chain equals vibrational ensemble", chain_decoupling},
        {6, "grouped form diagnostic", grouped_form},
        {7, "ground-state structure", ground_states},
        {8, "convergence estimates verified", proof_estimates},
        {9, "fermi mean particle number", mean_particle},
        {10, "cli output is byte-for-byte reproducible", [&] { return determinism(tool); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string(" exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << ":" << o.detail << '\n';
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
