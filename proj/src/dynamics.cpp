#include "discourse/dynamics.hpp"

#include <numeric>

namespace discourse {

DayContext make_day_context(std::string_view day_text, const Lexicon& lexicon) {
    DayContext ctx;
    ctx.threat_keyword_count =
        count_keywords(day_text, lexicon.threat_terms, lexicon.longest_match_only);
    ctx.humanitarian_keyword_count =
        count_keywords(day_text, lexicon.humanitarian_terms, lexicon.longest_match_only);
    ctx.economic_keyword_count =
        count_keywords(day_text, lexicon.economic_terms, lexicon.longest_match_only);
    ctx.cultural_keyword_count =
        count_keywords(day_text, lexicon.cultural_terms, lexicon.longest_match_only);
    ctx.threat_present = ctx.threat_keyword_count > 0;
    return ctx;
}

double clip(double value, double lo, double hi) {
    return value < lo ? lo : (value > hi ? hi : value);
}

double inertia(double openness, const Coefficients& coeff) {
    return 1.0 - openness * coeff.inertia_openness_scale;
}

double peer_pull(double conformity, double trust_peers, double peer_mean, double attitude) {
    return conformity * trust_peers * (peer_mean - attitude);
}

double peer_pull_from_scores(double conformity, double trust_peers,
                             std::span<const double> neighbor_scores, double attitude) {
    if (neighbor_scores.empty()) return 0.0;
    const double mean =
        std::accumulate(neighbor_scores.begin(), neighbor_scores.end(), 0.0) /
        static_cast<double>(neighbor_scores.size());
    return peer_pull(conformity, trust_peers, mean, attitude);
}

double update_mood(double prev_mood, bool threat_present, const Coefficients& coeff) {
    const double shock = threat_present ? coeff.mood_shock_threat : coeff.mood_shock_calm;
    return clip(coeff.mood_decay * prev_mood + shock, -1.0, 1.0);
}

double composite_belief(const BeliefState& beliefs, const Coefficients& coeff) {
    return coeff.weight_economic * beliefs.economic_threat +
           coeff.weight_cultural * beliefs.cultural_threat +
           coeff.weight_security * beliefs.security_threat +
           coeff.weight_humanitarian * beliefs.humanitarian;
}

BeliefState update_beliefs(const Agent& agent, const DayContext& day,
                           const Coefficients& coeff) {
    const double reactivity = agent.psych.emotional_reactivity;
    const double per = coeff.salience_per_keyword;
    BeliefState next = agent.beliefs;
    next.security_threat = clip(
        next.security_threat + static_cast<double>(day.threat_keyword_count) * per * reactivity,
        -1.0, 1.0);
    next.humanitarian = clip(
        next.humanitarian + static_cast<double>(day.humanitarian_keyword_count) * per *
                                reactivity * agent.psych.openness,
        -1.0, 1.0);
    if (coeff.update_economic_cultural) {
        next.economic_threat = clip(
            next.economic_threat +
                static_cast<double>(day.economic_keyword_count) * per * reactivity,
            -1.0, 1.0);
        next.cultural_threat = clip(
            next.cultural_threat +
                static_cast<double>(day.cultural_keyword_count) * per * reactivity,
            -1.0, 1.0);
    }
    return next;
}

double update_attitude(double prev_attitude, double openness, double own_score,
                       double pull, double belief_composite, const Coefficients& coeff) {
    const double anchor = inertia(openness, coeff);
    const double flexible = coeff.mix_own_score * own_score +
                            coeff.mix_peer_pull * pull +
                            coeff.mix_belief * belief_composite;
    return clip(anchor * prev_attitude + (1.0 - anchor) * flexible, -1.0, 1.0);
}

double update_exposure(double prev, double emotional_reactivity, bool threat_present,
                       const Coefficients& coeff) {
    if (!threat_present) return prev;
    const double next = prev + coeff.exposure_increment * emotional_reactivity;
    return next < 1.0 ? next : 1.0;
}

Agent step_agent(const Agent& agent, const UpdateInputs& inputs, const Coefficients& coeff) {
    Agent next = agent;
    next.beliefs = update_beliefs(agent, inputs.day, coeff);
    const double pull = peer_pull_from_scores(agent.psych.conformity, agent.psych.trust_peers,
                                              inputs.neighbor_scores, agent.attitude);
    next.attitude = update_attitude(agent.attitude, agent.psych.openness, inputs.own_score,
                                    pull, composite_belief(next.beliefs, coeff), coeff);
    next.mood = update_mood(agent.mood, inputs.day.threat_present, coeff);
    next.exposure = update_exposure(agent.exposure, agent.psych.emotional_reactivity,
                                    inputs.day.threat_present, coeff);
    next.attitude_history.push_back(next.attitude);
    return next;
}

} // namespace discourse
