#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "discourse/agent.hpp"
#include "discourse/rng.hpp"

namespace discourse {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Per-kind prior intervals. Defaults are the model's calibration; override
// programmatically to study alternative populations.
struct KindPriors {
    Interval attitude;
    Interval economic_threat;
    Interval cultural_threat;
    Interval humanitarian;
    Interval openness;
    Interval conformity;
    Interval emotional_reactivity;
    Interval trust_peers;
};

struct PopulationPriors {
    KindPriors centrist;
    KindPriors pro_imm;
    KindPriors far_right;
    KindPriors media;

    const KindPriors& for_kind(AgentKind kind) const;
};

PopulationPriors default_priors();

// {centrist: 0.45, pro_imm: 0.25, far_right: 0.20, media: 0.10}
std::map<AgentKind, double> kind_distribution();

// Largest-remainder apportionment of n agents over kind_distribution(),
// ties broken in kAgentKinds order. Counts always sum to n.
std::array<std::size_t, 4> kind_counts(std::size_t n);

// Draws one agent from its kind priors. Draw order is fixed (attitude,
// economic, cultural, humanitarian, openness, conformity, reactivity, trust)
// and is part of the reproducibility contract. security_threat starts at
// the initial exposure, i.e. 0.0; mood 0.0; histories empty; quirk unset.
Agent sample_agent(std::string id, std::size_t index, AgentKind kind, Rng& rng,
                   const PopulationPriors& priors = default_priors());

// Samples the full population in id order: kind blocks in kAgentKinds order,
// each agent on its own stream derived from (master_seed, agent index).
std::vector<Agent> sample_population(std::size_t n, std::uint64_t master_seed,
                                     const PopulationPriors& priors = default_priors());

// Uniform draw from the 8 quirk labels; no-op when already assigned.
void assign_quirk(Agent& agent, Rng& rng);

} // namespace discourse
