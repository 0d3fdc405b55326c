#pragma once

#include <span>
#include <vector>

#include "discourse/agent.hpp"
#include "discourse/timeline.hpp"

namespace discourse {

// Every numeric constant of the update model in one record. The defaults are
// the calibrated model; overriding any of them requires an explicit
// "coefficients" config block, so tests can pin the defaults.
struct Coefficients {
    double salience_per_keyword = 0.06;
    double exposure_increment = 0.07;
    double mood_decay = 0.8;
    double mood_shock_threat = -0.1;
    double mood_shock_calm = 0.04;
    // composite = w_economic*economic + w_cultural*cultural
    //           + w_security*security + w_humanitarian*humanitarian
    double weight_economic = 0.3;
    double weight_cultural = 0.3;
    double weight_security = 0.2;
    double weight_humanitarian = -0.2;
    // flexible part of the attitude update
    double mix_own_score = 0.4;
    double mix_peer_pull = 0.3;
    double mix_belief = 0.3;
    // inertia = 1 - openness * inertia_openness_scale
    double inertia_openness_scale = 0.5;
    // opt-in extension: economic/cultural keyword updates (beyond the core
    // model, which leaves those two dimensions static after initialization)
    bool update_economic_cultural = false;

    bool operator==(const Coefficients&) const = default;
};

// Per-day salience signals shared by every agent. Derived from the day
// entry's text once, before the update phase.
struct DayContext {
    std::size_t threat_keyword_count = 0;
    std::size_t humanitarian_keyword_count = 0;
    std::size_t economic_keyword_count = 0; // used only by the opt-in extension
    std::size_t cultural_keyword_count = 0;
    bool threat_present = false; // <=> threat_keyword_count > 0
};

DayContext make_day_context(std::string_view day_text, const Lexicon& lexicon);

struct UpdateInputs {
    double own_score = 0.0;              // today's scored post, [-1, 1]
    std::vector<double> neighbor_scores; // today's scores of graph neighbors
    DayContext day;
};

double clip(double value, double lo, double hi);

// 1 - openness * 0.5, range [0.5, 1.0] for openness in [0, 1]
double inertia(double openness, const Coefficients& coeff = {});

// conformity * trust * (peer_mean - attitude)
double peer_pull(double conformity, double trust_peers, double peer_mean, double attitude);

// Mean of neighbor scores fed into peer_pull; no scored neighbors -> 0.
double peer_pull_from_scores(double conformity, double trust_peers,
                             std::span<const double> neighbor_scores, double attitude);

// clip(decay * prev + shock), shock -0.1 on threat days, +0.04 otherwise
double update_mood(double prev_mood, bool threat_present, const Coefficients& coeff = {});

// Weighted sum of the four dimensions. Deliberately unclipped; only the
// final attitude is clipped.
double composite_belief(const BeliefState& beliefs, const Coefficients& coeff = {});

// Additive salience: security += count*c*reactivity, humanitarian +=
// count*c*reactivity*openness, both clipped to [-1, 1]. Economic/cultural
// move only when the opt-in extension is enabled.
BeliefState update_beliefs(const Agent& agent, const DayContext& day,
                           const Coefficients& coeff = {});

// clip(inertia*prev + (1-inertia)*(0.4*own + 0.3*pull + 0.3*composite)).
// belief_composite must come from the already-updated BeliefState.
double update_attitude(double prev_attitude, double openness, double own_score,
                       double pull, double belief_composite,
                       const Coefficients& coeff = {});

// Threat day: min(1, prev + 0.07*reactivity); otherwise unchanged.
double update_exposure(double prev, double emotional_reactivity, bool threat_present,
                       const Coefficients& coeff = {});

// Full end-of-day step, in order: beliefs, attitude, mood, exposure; appends
// the new attitude to attitude_history. Pure function of (agent, inputs).
Agent step_agent(const Agent& agent, const UpdateInputs& inputs,
                 const Coefficients& coeff = {});

} // namespace discourse
