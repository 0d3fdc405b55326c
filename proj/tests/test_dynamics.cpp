#include <doctest.h>

#include <cmath>

#include "discourse/dynamics.hpp"
#include "discourse/rng.hpp"

using namespace discourse;

namespace {

Agent make_agent(double attitude, double openness, double conformity, double reactivity,
                 double trust, BeliefState beliefs = {}, double mood = 0.0,
                 double exposure = 0.0) {
    Agent a;
    a.id = "agent_0";
    a.attitude = attitude;
    a.psych = {openness, conformity, reactivity, trust};
    a.beliefs = beliefs;
    a.mood = mood;
    a.exposure = exposure;
    return a;
}

DayContext day_with(std::size_t threat, std::size_t humanitarian) {
    DayContext d;
    d.threat_keyword_count = threat;
    d.humanitarian_keyword_count = humanitarian;
    d.threat_present = threat > 0;
    return d;
}

} // namespace

TEST_CASE("inertia formula") {
    CHECK(inertia(0.0) == 1.0);
    CHECK(inertia(1.0) == 0.5);
    CHECK(inertia(0.5) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("inertia stays in [0.5, 1.0] for openness in [0, 1]") {
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const double v = inertia(rng.uniform(0.0, 1.0));
        CHECK(v >= 0.5);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("peer_pull") {
    CHECK(peer_pull(0.5, 0.8, 0.6, 0.2) == doctest::Approx(0.16).epsilon(1e-15));
    CHECK(peer_pull(0.7, 0.9, 0.3, 0.3) == 0.0);
    CHECK(peer_pull_from_scores(0.5, 0.8, {}, 0.2) == 0.0); // no scored neighbors
}

TEST_CASE("peer_pull direction follows the gap") {
    Rng rng(12);
    for (int i = 0; i < 10000; ++i) {
        const double conformity = rng.uniform(0.3, 0.8);
        const double trust = rng.uniform(0.4, 0.9);
        const double mean = rng.uniform(-1.0, 1.0);
        const double attitude = rng.uniform(-1.0, 1.0);
        const double pull = peer_pull(conformity, trust, mean, attitude);
        if (mean > attitude) CHECK(pull > 0.0);
        if (mean < attitude) CHECK(pull < 0.0);
    }
}

TEST_CASE("update_mood shock and clip") {
    CHECK(update_mood(0.0, true) == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(update_mood(0.0, false) == doctest::Approx(0.04).epsilon(1e-15));
    CHECK(update_mood(-1.0, true) == doctest::Approx(-0.9).epsilon(1e-15));
    CHECK(update_mood(1.0, false) == doctest::Approx(0.84).epsilon(1e-15));
}

TEST_CASE("mood decays below 11% of a shock within 10 steps") {
    double mood = update_mood(0.0, true); // single -0.1 shock
    const double original = std::abs(mood);
    for (int i = 0; i < 10; ++i) mood *= 0.8; // shock-free decay
    CHECK(std::abs(mood) <= 0.11 * original);
    CHECK(std::abs(mood) > 0.10 * original); // 0.8^10 is just above 0.10
}

TEST_CASE("composite_belief weights") {
    CHECK(composite_belief(BeliefState{}) == 0.0);
    CHECK(composite_belief({0.9, 0.9, 1.0, -0.5}) == doctest::Approx(0.84).epsilon(1e-15));
    // humanitarian belief pushes pro-immigration
    CHECK(composite_belief({0.0, 0.0, 0.0, 1.0}) == doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("update_beliefs applies salience additively") {
    Agent a = make_agent(0.0, 1.0, 0.5, 1.0, 0.5);

    SUBCASE("one threat keyword, reactivity 1.0") {
        const BeliefState next = update_beliefs(a, day_with(1, 0));
        CHECK(next.security_threat == doctest::Approx(0.06).epsilon(1e-15));
        CHECK(next.humanitarian == a.beliefs.humanitarian);
        CHECK(next.economic_threat == a.beliefs.economic_threat);
        CHECK(next.cultural_threat == a.beliefs.cultural_threat);
    }
    SUBCASE("humanitarian clips at the upper bound") {
        a.beliefs.humanitarian = 0.98;
        a.psych.openness = 1.0;
        const BeliefState next = update_beliefs(a, day_with(0, 2)); // salience 0.12
        CHECK(next.humanitarian == 1.0);
    }
    SUBCASE("no keywords, no change") {
        a.beliefs = {0.3, -0.2, 0.1, 0.4};
        const BeliefState next = update_beliefs(a, day_with(0, 0));
        CHECK(next.economic_threat == 0.3);
        CHECK(next.cultural_threat == -0.2);
        CHECK(next.security_threat == 0.1);
        CHECK(next.humanitarian == 0.4);
    }
    SUBCASE("economic/cultural move only with the opt-in extension") {
        DayContext d = day_with(0, 0);
        d.economic_keyword_count = 2;
        d.cultural_keyword_count = 1;
        CHECK(update_beliefs(a, d).economic_threat == a.beliefs.economic_threat);
        Coefficients ext;
        ext.update_economic_cultural = true;
        const BeliefState next = update_beliefs(a, d, ext);
        CHECK(next.economic_threat == doctest::Approx(0.12).epsilon(1e-15));
        CHECK(next.cultural_threat == doctest::Approx(0.06).epsilon(1e-15));
    }
}

TEST_CASE("update_attitude") {
    // openness 0: inertia 1, attitude frozen
    CHECK(update_attitude(0.37, 0.0, 1.0, 1.0, 1.0) == 0.37);
    // openness 1, prev 0, own 1, rest 0
    CHECK(update_attitude(0.0, 1.0, 1.0, 0.0, 0.0) == doctest::Approx(0.2).epsilon(1e-15));
    // openness 1, prev 1, own 1, pull 0.64, composite 0.84
    CHECK(update_attitude(1.0, 1.0, 1.0, 0.64, 0.84) ==
          doctest::Approx(0.922).epsilon(1e-15));
}

TEST_CASE("update_exposure") {
    CHECK(update_exposure(0.0, 1.0, true) == doctest::Approx(0.07).epsilon(1e-15));
    CHECK(update_exposure(0.95, 1.0, true) == 1.0);
    CHECK(update_exposure(0.5, 0.9, false) == 0.5);

    SUBCASE("saturates within the simulation window") {
        double exposure = 0.0;
        for (int day = 0; day < 14; ++day) exposure = update_exposure(exposure, 1.0, true);
        CHECK(exposure == doctest::Approx(0.98).epsilon(1e-12));
        exposure = update_exposure(exposure, 1.0, true);
        CHECK(exposure == 1.0);
    }
}

TEST_CASE("step_agent composes the five components in order") {
    BeliefState beliefs{0.5, 0.2, 0.1, -0.3};
    Agent a = make_agent(0.4, 0.6, 0.5, 0.8, 0.7, beliefs, 0.2, 0.1);
    UpdateInputs inputs;
    inputs.own_score = 0.5;
    inputs.neighbor_scores = {1.0, 0.0, 0.5};
    inputs.day = day_with(2, 1);

    const Agent next = step_agent(a, inputs);

    // oracle: recompute by hand from the granular operations
    BeliefState expected_beliefs = beliefs;
    expected_beliefs.security_threat = clip(0.1 + 2 * 0.06 * 0.8, -1.0, 1.0);
    expected_beliefs.humanitarian = clip(-0.3 + 1 * 0.06 * 0.8 * 0.6, -1.0, 1.0);
    const double mean = (1.0 + 0.0 + 0.5) / 3.0;
    const double pull = 0.5 * 0.7 * (mean - 0.4);
    const double composite = composite_belief(expected_beliefs);
    const double anchor = 1.0 - 0.6 * 0.5;
    const double expected_attitude =
        clip(anchor * 0.4 + (1 - anchor) * (0.4 * 0.5 + 0.3 * pull + 0.3 * composite), -1, 1);

    CHECK(next.beliefs.security_threat == doctest::Approx(expected_beliefs.security_threat).epsilon(1e-15));
    CHECK(next.beliefs.humanitarian == doctest::Approx(expected_beliefs.humanitarian).epsilon(1e-15));
    CHECK(next.attitude == doctest::Approx(expected_attitude).epsilon(1e-15));
    CHECK(next.mood == doctest::Approx(update_mood(0.2, true)).epsilon(1e-15));
    CHECK(next.exposure == doctest::Approx(update_exposure(0.1, 0.8, true)).epsilon(1e-15));
    CHECK(next.attitude_history.size() == 1);
    CHECK(next.attitude_history.back() == next.attitude);

    SUBCASE("pure function: identical calls, identical results") {
        const Agent again = step_agent(a, inputs);
        CHECK(again.attitude == next.attitude);
        CHECK(again.mood == next.mood);
        CHECK(again.exposure == next.exposure);
        CHECK(again.beliefs.security_threat == next.beliefs.security_threat);
    }
}

TEST_CASE("openness 0 agents only move mood and exposure") {
    Agent a = make_agent(0.7, 0.0, 0.8, 1.0, 0.9, {0.1, 0.1, 0.1, 0.1}, 0.0, 0.0);
    UpdateInputs inputs;
    inputs.own_score = -1.0;
    inputs.neighbor_scores = {-1.0, -1.0};
    inputs.day = day_with(3, 0);
    const Agent next = step_agent(a, inputs);
    CHECK(next.attitude == a.attitude);
    CHECK(next.mood != a.mood);
    CHECK(next.exposure > a.exposure);
}

TEST_CASE("fixed point at zero: fully aligned neutral agent does not move") {
    // With own_score == attitude == peer_mean == composite, peer_pull is 0 and
    // the flexible mix reproduces 0.7x, so the update has an exact fixed point
    // only at x == 0 (the mix weights deliberately sum below 1 once the pull
    // term vanishes). Pin the zero case exactly.
    BeliefState beliefs{0.0, 0.0, 0.0, 0.0};
    Agent a = make_agent(0.0, 0.8, 0.5, 0.7, 0.6, beliefs);
    UpdateInputs inputs;
    inputs.own_score = 0.0;
    inputs.neighbor_scores = {0.0, 0.0};
    inputs.day = day_with(0, 0);
    const Agent next = step_agent(a, inputs);
    CHECK(next.attitude == 0.0);

    // and a nonzero aligned state contracts toward zero by (0.7 + 0.3*inertia)
    Agent b = make_agent(0.4, 0.8, 0.5, 0.7, 0.6, {0.5, 0.5, 0.5, 0.5});
    const double composite = composite_belief(b.beliefs);
    UpdateInputs aligned;
    aligned.own_score = b.attitude;
    aligned.neighbor_scores = {b.attitude};
    aligned.day = day_with(0, 0);
    b.attitude = composite; // 0.3: align everything at the composite value
    aligned.own_score = composite;
    aligned.neighbor_scores = {composite};
    const Agent moved = step_agent(b, aligned);
    const double anchor = inertia(b.psych.openness);
    CHECK(moved.attitude ==
          doctest::Approx(composite * (0.7 + 0.3 * anchor)).epsilon(1e-14));
}

TEST_CASE("range safety over random in-range inputs") {
    Rng rng(1234);
    for (int i = 0; i < 100000; ++i) {
        Agent a = make_agent(rng.uniform(-1, 1), rng.uniform(0.1, 1.0), rng.uniform(0.3, 0.8),
                             rng.uniform(0.2, 1.0), rng.uniform(0.4, 0.9),
                             {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-1, 1)},
                             rng.uniform(-1, 1), rng.uniform(0, 1));
        UpdateInputs inputs;
        inputs.own_score = rng.uniform(-1, 1);
        const std::size_t neighbors = rng.below(6);
        for (std::size_t j = 0; j < neighbors; ++j) {
            inputs.neighbor_scores.push_back(rng.uniform(-1, 1));
        }
        inputs.day = day_with(rng.below(9), rng.below(9));

        const Agent next = step_agent(a, inputs);
        REQUIRE(next.attitude >= -1.0);
        REQUIRE(next.attitude <= 1.0);
        REQUIRE(next.mood >= -1.0);
        REQUIRE(next.mood <= 1.0);
        REQUIRE(next.exposure >= a.exposure); // monotone
        REQUIRE(next.exposure <= 1.0);
        for (double b : {next.beliefs.economic_threat, next.beliefs.cultural_threat,
                         next.beliefs.security_threat, next.beliefs.humanitarian}) {
            REQUIRE(b >= -1.0);
            REQUIRE(b <= 1.0);
        }
    }
}

TEST_CASE("default coefficients carry the model constants") {
    const Coefficients c;
    CHECK(c.salience_per_keyword == 0.06);
    CHECK(c.exposure_increment == 0.07);
    CHECK(c.mood_decay == 0.8);
    CHECK(c.mood_shock_threat == -0.1);
    CHECK(c.mood_shock_calm == 0.04);
    CHECK(c.weight_economic == 0.3);
    CHECK(c.weight_cultural == 0.3);
    CHECK(c.weight_security == 0.2);
    CHECK(c.weight_humanitarian == -0.2);
    CHECK(c.mix_own_score == 0.4);
    CHECK(c.mix_peer_pull == 0.3);
    CHECK(c.mix_belief == 0.3);
    CHECK(c.inertia_openness_scale == 0.5);
    CHECK_FALSE(c.update_economic_cultural);
}
