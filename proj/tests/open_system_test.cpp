#include <doctest.h>

#include <algorithm>

#include "oscstat/errors.hpp"
#include "oscstat/open_system.hpp"
#include "reference.hpp"

using namespace oscstat;
using Occ = std::map<Level, Count>;

TEST_CASE("effective frequency") {
    CHECK(effective_frequency(0, 0.0, {}) == 0.5);
    CHECK(effective_frequency(2, 2.5, {}) == 0.0);
    CHECK(effective_frequency(3, 2.5, {}) == 1.0);
    CHECK(effective_frequency(0, 1.0, {}) == -0.5);
}

TEST_CASE("vibrational threshold") {
    CHECK(q_min_vibrational(0.0, {}) == -0.5);
    CHECK(q_min_vibrational(2.5, {}) == 2.0);
    CHECK(q_min_vibrational(0.5, {}) == 0.0);
    CHECK(q_min_vibrational(3.0, {1.0, 1.0, 2.0}) == 1.0);
}

TEST_CASE("strict accessibility at the threshold") {
    const auto set = accessible_set(2.5, {}, 5);
    CHECK(set.q_min == 2.0);
    CHECK(set.accessible == std::vector<Level>{3, 4, 5});
    CHECK(set.inaccessible == std::vector<Level>{0, 1, 2});
    CHECK(set.boundary.empty());
    CHECK(classify_level(0, 0.5, {}) == Accessibility::Inaccessible);
    CHECK(classify_level(1, 0.5, {}) == Accessibility::Accessible);
}

TEST_CASE("tolerance reports boundary levels separately") {
    const double mu = 2.5 + 1e-13;
    CHECK(classify_level(2, mu, {}) == Accessibility::Inaccessible);
    CHECK(classify_level(2, mu, {}, 1e-9) == Accessibility::Boundary);
    const auto set = accessible_set(mu, {}, 4, 1e-9);
    CHECK(set.boundary == std::vector<Level>{2});
    CHECK(set.accessible == std::vector<Level>{3, 4});
    CHECK(set.inaccessible == std::vector<Level>{0, 1});
}

TEST_CASE("effective energy") {
    CHECK(effective_energy_vibrational(OccupationState(Occ{{0, 1}}), 0.0, {}) == 0.5);
    CHECK(effective_energy_vibrational(OccupationState(Occ{{0, 1}}), 0.25, {}) == 0.25);
    const OccupationState occ({{0, 2}, {3, 1}});
    CHECK(effective_energy_vibrational(occ, 1.0, {}) == 1.5);
    CHECK(effective_energy_vibrational_two_sum(occ, 1.0, {}) == 1.5);
    CHECK_THROWS_AS((void)effective_energy_vibrational(OccupationState(Occ{{0, 1}}, 2), 0.0, {}), MalformedInputError);
}

TEST_CASE("positivity check") {
    auto r = positivity_check(OccupationState(Occ{{0, 1}}), 0.0, {});
    CHECK(r.positive);
    CHECK(r.effective_energy == 0.5);
    r = positivity_check(OccupationState(Occ{{0, 1}}), 1.0, {});
    CHECK_FALSE(r.positive);
    CHECK(r.offending_levels == std::vector<Level>{0});
    r = positivity_check(OccupationState(), 0.0, {});
    CHECK_FALSE(r.positive);
    CHECK(r.effective_energy == 0.0);
}

TEST_CASE("fermion classification") {
    CHECK(classify_fermion_state(0, 1.6, {}) == FermionClass::Bound);
    CHECK(classify_fermion_state(1, 1.6, {}) == FermionClass::Bound);
    CHECK(classify_fermion_state(2, 1.6, {}) == FermionClass::Exchangeable);
    CHECK(classify_fermion_state(1, 1.5, {}) == FermionClass::Exchangeable);
}

TEST_CASE("single-sum and two-sum forms agree on random states") {
    auto gen = ref::rng(21);
    std::uniform_int_distribution<Level> level(0, 40);
    std::uniform_int_distribution<Count> count(0, 7);
    std::uniform_real_distribution<double> mu_dist(-5.0, 30.0);
    std::uniform_real_distribution<double> hw_dist(0.1, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::map<Level, Count> m;
        for (int i = 0; i < 5; ++i) m[level(gen)] += count(gen);
        const OccupationState occ(m);
        const OscillatorParams p{1.0, 1.0, hw_dist(gen)};
        const double mu = mu_dist(gen);
        const double single = effective_energy_vibrational(occ, mu, p);
        const double two = effective_energy_vibrational_two_sum(occ, mu, p);
        const double scale = std::max({std::abs(single), std::abs(two), ensemble_energy(occ, p), 1e-300});
        CHECK(std::abs(single - two) <= 1e-12 * scale);
    }
}

TEST_CASE("threshold consistency and monotonicity") {
    auto gen = ref::rng(22);
    std::uniform_real_distribution<double> mu_dist(-3.0, 40.0);
    std::uniform_real_distribution<double> hw_dist(0.2, 4.0);
    for (int trial = 0; trial < 300; ++trial) {
        const OscillatorParams p{1.0, 1.0, hw_dist(gen)};
        const double mu = mu_dist(gen);
        const double qmin = q_min_vibrational(mu, p);
        bool seen_accessible = false;
        for (Level q = 0; q <= 60; ++q) {
            const bool positive = effective_frequency(q, mu, p) > 0.0;
            CHECK(positive == (static_cast<double>(q) > qmin));
            CHECK(positive == (classify_level(q, mu, p) == Accessibility::Accessible));
            if (seen_accessible) CHECK(positive);
            seen_accessible = seen_accessible || positive;
        }
        const double mu2 = mu + 0.37;
        CHECK(q_min_vibrational(mu2, p) > qmin);
        const auto small = accessible_set(mu2, p, 60).accessible;
        const auto large = accessible_set(mu, p, 60).accessible;
        CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
}

TEST_CASE("bound levels lie below the threshold") {
    for (double mu : {-1.0, 0.3, 1.6, 2.2, 7.9}) {
        const double qmin = q_min_vibrational(mu, {});
        for (Level q = 0; q < 20; ++q) {
            CHECK((classify_fermion_state(q, mu, {}) == FermionClass::Bound) == (static_cast<double>(q) < qmin));
        }
    }
}

TEST_CASE("occupying only accessible levels gives positive energy") {
    auto gen = ref::rng(23);
    std::uniform_real_distribution<double> mu_dist(-2.0, 10.0);
    std::uniform_int_distribution<Count> count(1, 4);
    for (int trial = 0; trial < 300; ++trial) {
        const double mu = mu_dist(gen);
        const auto set = accessible_set(mu, {}, 25);
        std::map<Level, Count> m;
        for (std::size_t i = 0; i < set.accessible.size(); i += 3) m[set.accessible[i]] = count(gen);
        if (m.empty()) continue;
        CHECK(positivity_check(OccupationState(m), mu, {}).positive);
    }
}
