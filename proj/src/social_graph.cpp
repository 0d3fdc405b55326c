#include "discourse/social_graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace discourse {

const std::vector<std::uint32_t>& SocialGraph::neighbors(std::size_t agent_index) const {
    if (agent_index >= n_) {
        throw std::out_of_range("agent index " + std::to_string(agent_index) +
                                " out of range for graph of " + std::to_string(n_) + " nodes");
    }
    return adjacency_[agent_index];
}

std::size_t SocialGraph::edge_count() const {
    std::size_t degree_sum = 0;
    for (const auto& nbrs : adjacency_) degree_sum += nbrs.size();
    return degree_sum / 2;
}

SocialGraph build_ws_graph(std::size_t n, std::size_t k, double p, Rng& rng) {
    if (k % 2 != 0) throw std::invalid_argument("ws graph: k must be even");
    if (k < 2) throw std::invalid_argument("ws graph: k must be >= 2");
    if (k >= n) throw std::invalid_argument("ws graph: need n > k");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("ws graph: p must be in [0, 1]");

    std::vector<std::unordered_set<std::uint32_t>> adj(n);
    const std::size_t half = k / 2;

    auto add_edge = [&](std::uint32_t a, std::uint32_t b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    auto remove_edge = [&](std::uint32_t a, std::uint32_t b) {
        adj[a].erase(b);
        adj[b].erase(a);
    };

    // Ring lattice. Each undirected edge (i, i+d mod n), d in [1, k/2], is
    // owned by exactly one (i, d) pair because k < n.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 1; d <= half; ++d) {
            add_edge(static_cast<std::uint32_t>(i),
                     static_cast<std::uint32_t>((i + d) % n));
        }
    }

    // Rewire in deterministic (node, offset) order.
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::uint32_t>(i);
        for (std::size_t d = 1; d <= half; ++d) {
            if (!rng.chance(p)) continue;
            const auto old_target = static_cast<std::uint32_t>((i + d) % n);
            if (adj[u].size() >= n - 1) continue; // node saturated, keep edge
            std::uint32_t fresh;
            do {
                fresh = static_cast<std::uint32_t>(rng.below(n));
            } while (fresh == u || adj[u].count(fresh) != 0);
            remove_edge(u, old_target);
            add_edge(u, fresh);
        }
    }

    std::vector<std::vector<std::uint32_t>> sorted(n);
    for (std::size_t i = 0; i < n; ++i) {
        sorted[i].assign(adj[i].begin(), adj[i].end());
        std::sort(sorted[i].begin(), sorted[i].end());
    }
    return SocialGraph(n, k, p, std::move(sorted));
}

void write_edgelist(const SocialGraph& graph, std::ostream& out) {
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        for (std::uint32_t j : graph.neighbors(i)) {
            if (j > i) out << i << ' ' << j << '\n';
        }
    }
}

} // namespace discourse
