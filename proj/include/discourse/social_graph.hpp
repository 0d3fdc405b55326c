#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "discourse/rng.hpp"

namespace discourse {

// Fixed small-world topology. Immutable after construction; concurrent
// reads are safe.
class SocialGraph {
public:
    SocialGraph() = default;
    SocialGraph(std::size_t n, std::size_t k, double p,
                std::vector<std::vector<std::uint32_t>> adjacency)
        : n_(n), k_(k), p_(p), adjacency_(std::move(adjacency)) {}

    std::size_t node_count() const { return n_; }
    std::size_t base_degree() const { return k_; }
    double rewire_probability() const { return p_; }

    // Ascending neighbor ids. Throws std::out_of_range on a bad index.
    const std::vector<std::uint32_t>& neighbors(std::size_t agent_index) const;

    std::size_t edge_count() const;

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    double p_ = 0.0;
    std::vector<std::vector<std::uint32_t>> adjacency_;
};

// Watts-Strogatz construction: ring lattice of degree k, then each lattice
// edge (i, i+d) visited in (node, offset) order is rewired with probability p
// to a uniformly chosen endpoint that is neither i nor already adjacent.
// Edges with no valid new endpoint are kept, so the edge count is always
// n*k/2. Throws std::invalid_argument unless n > k >= 2, k even, p in [0,1].
SocialGraph build_ws_graph(std::size_t n, std::size_t k, double p, Rng& rng);

// One "i j" pair per line, i < j, sorted. Audit format.
void write_edgelist(const SocialGraph& graph, std::ostream& out);

} // namespace discourse
