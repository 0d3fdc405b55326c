#include "discourse/population.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace discourse {

std::string_view to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::centrist: return "centrist";
        case AgentKind::pro_imm: return "pro_imm";
        case AgentKind::far_right: return "far_right";
        case AgentKind::media: return "media";
    }
    throw std::logic_error("invalid AgentKind");
}

AgentKind agent_kind_from_string(std::string_view name) {
    for (AgentKind kind : kAgentKinds) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown agent kind: " + std::string(name));
}

std::string_view to_string(Quirk quirk) {
    switch (quirk) {
        case Quirk::sarcasm: return "sarcasm";
        case Quirk::emojis: return "emojis";
        case Quirk::hashtags: return "hashtags";
        case Quirk::formal_tone: return "formal_tone";
        case Quirk::rhetorical_questions: return "rhetorical_questions";
        case Quirk::all_lowercase: return "all_lowercase";
        case Quirk::statistics_citing: return "statistics_citing";
        case Quirk::personal_anecdote: return "personal_anecdote";
    }
    throw std::logic_error("invalid Quirk");
}

Quirk quirk_from_string(std::string_view name) {
    for (Quirk quirk : kQuirks) {
        if (to_string(quirk) == name) return quirk;
    }
    throw std::invalid_argument("unknown quirk: " + std::string(name));
}

const KindPriors& PopulationPriors::for_kind(AgentKind kind) const {
    switch (kind) {
        case AgentKind::centrist: return centrist;
        case AgentKind::pro_imm: return pro_imm;
        case AgentKind::far_right: return far_right;
        case AgentKind::media: return media;
    }
    throw std::logic_error("invalid AgentKind");
}

namespace {

// Media agents are modelled as moderate institutional voices: belief priors
// reuse the centrist intervals narrowed 50% toward their midpoint.
Interval narrowed(Interval iv) {
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double half = 0.25 * (iv.hi - iv.lo);
    return {mid - half, mid + half};
}

} // namespace

PopulationPriors default_priors() {
    PopulationPriors p;

    p.centrist.attitude = {-0.4, 0.4};
    p.centrist.economic_threat = {-0.2, 0.4};
    p.centrist.cultural_threat = {-0.2, 0.3};
    p.centrist.humanitarian = {0.0, 0.5};
    p.centrist.openness = {0.3, 0.7};
    p.centrist.emotional_reactivity = {0.3, 0.7};

    p.pro_imm.attitude = {-1.0, -0.3};
    p.pro_imm.economic_threat = {-0.5, 0.1};
    p.pro_imm.cultural_threat = {-0.5, 0.0};
    p.pro_imm.humanitarian = {0.4, 1.0};
    p.pro_imm.openness = {0.4, 0.8};
    p.pro_imm.emotional_reactivity = {0.4, 0.8};

    p.far_right.attitude = {0.5, 1.0};
    p.far_right.economic_threat = {0.4, 0.9};
    p.far_right.cultural_threat = {0.4, 0.9};
    p.far_right.humanitarian = {-0.5, 0.1};
    p.far_right.openness = {0.1, 0.4};
    p.far_right.emotional_reactivity = {0.6, 1.0};

    p.media.attitude = {-0.3, 0.3};
    p.media.economic_threat = narrowed(p.centrist.economic_threat);
    p.media.cultural_threat = narrowed(p.centrist.cultural_threat);
    p.media.humanitarian = narrowed(p.centrist.humanitarian);
    p.media.openness = {0.6, 1.0};
    p.media.emotional_reactivity = {0.2, 0.5};

    for (KindPriors* kp : {&p.centrist, &p.pro_imm, &p.far_right, &p.media}) {
        kp->conformity = {0.3, 0.8};
        kp->trust_peers = {0.4, 0.9};
    }
    return p;
}

std::map<AgentKind, double> kind_distribution() {
    return {
        {AgentKind::centrist, 0.45},
        {AgentKind::pro_imm, 0.25},
        {AgentKind::far_right, 0.20},
        {AgentKind::media, 0.10},
    };
}

std::array<std::size_t, 4> kind_counts(std::size_t n) {
    const auto dist = kind_distribution();
    std::array<std::size_t, 4> counts{};
    std::array<double, 4> remainders{};
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < kAgentKinds.size(); ++k) {
        const double exact = static_cast<double>(n) * dist.at(kAgentKinds[k]);
        counts[k] = static_cast<std::size_t>(std::floor(exact));
        remainders[k] = exact - std::floor(exact);
        assigned += counts[k];
    }
    // Hand out the leftover seats by descending remainder, kind order on ties.
    std::array<std::size_t, 4> order = {0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
    for (std::size_t i = 0; assigned < n; ++i) {
        counts[order[i % 4]] += 1;
        ++assigned;
    }
    return counts;
}

Agent sample_agent(std::string id, std::size_t index, AgentKind kind, Rng& rng,
                   const PopulationPriors& priors) {
    const KindPriors& kp = priors.for_kind(kind);
    Agent a;
    a.id = std::move(id);
    a.index = index;
    a.kind = kind;
    a.attitude = rng.uniform(kp.attitude.lo, kp.attitude.hi);
    a.beliefs.economic_threat = rng.uniform(kp.economic_threat.lo, kp.economic_threat.hi);
    a.beliefs.cultural_threat = rng.uniform(kp.cultural_threat.lo, kp.cultural_threat.hi);
    a.beliefs.humanitarian = rng.uniform(kp.humanitarian.lo, kp.humanitarian.hi);
    a.beliefs.security_threat = 0.0; // tracks initial exposure
    a.psych.openness = rng.uniform(kp.openness.lo, kp.openness.hi);
    a.psych.conformity = rng.uniform(kp.conformity.lo, kp.conformity.hi);
    a.psych.emotional_reactivity =
        rng.uniform(kp.emotional_reactivity.lo, kp.emotional_reactivity.hi);
    a.psych.trust_peers = rng.uniform(kp.trust_peers.lo, kp.trust_peers.hi);
    a.exposure = 0.0;
    a.mood = 0.0;
    return a;
}

std::vector<Agent> sample_population(std::size_t n, std::uint64_t master_seed,
                                     const PopulationPriors& priors) {
    const auto counts = kind_counts(n);
    std::vector<Agent> agents;
    agents.reserve(n);
    std::size_t index = 0;
    for (std::size_t k = 0; k < kAgentKinds.size(); ++k) {
        for (std::size_t j = 0; j < counts[k]; ++j, ++index) {
            Rng rng = derive_rng(master_seed, StreamId::population, index);
            agents.push_back(sample_agent("agent_" + std::to_string(index), index,
                                          kAgentKinds[k], rng, priors));
        }
    }
    return agents;
}

void assign_quirk(Agent& agent, Rng& rng) {
    if (agent.quirk.has_value()) return;
    agent.quirk = kQuirks[rng.below(kQuirks.size())];
}

} // namespace discourse
