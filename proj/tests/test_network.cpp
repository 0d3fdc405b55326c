#include <doctest.h>

#include <algorithm>
#include <queue>
#include <sstream>

#include "discourse/social_graph.hpp"

using namespace discourse;

namespace {

bool connected(const SocialGraph& g) {
    if (g.node_count() == 0) return true;
    std::vector<bool> seen(g.node_count(), false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t visited = 1;
    while (!frontier.empty()) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::uint32_t v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                ++visited;
                frontier.push(v);
            }
        }
    }
    return visited == g.node_count();
}

} // namespace

TEST_CASE("p=0 reproduces the exact ring lattice") {
    Rng rng(42);
    const auto g = build_ws_graph(100, 6, 0.0, rng);
    CHECK(g.edge_count() == 300);
    for (std::size_t i = 0; i < 100; ++i) {
        CHECK(g.neighbors(i).size() == 6);
    }
    CHECK(g.neighbors(0) == std::vector<std::uint32_t>{1, 2, 3, 97, 98, 99});
    CHECK(g.neighbors(50) == std::vector<std::uint32_t>{47, 48, 49, 51, 52, 53});
}

TEST_CASE("smallest lattice is a 4-cycle") {
    Rng rng(1);
    const auto g = build_ws_graph(4, 2, 0.0, rng);
    CHECK(g.edge_count() == 4);
    CHECK(g.neighbors(0) == std::vector<std::uint32_t>{1, 3});
    CHECK(g.neighbors(1) == std::vector<std::uint32_t>{0, 2});
    CHECK(g.neighbors(2) == std::vector<std::uint32_t>{1, 3});
    CHECK(g.neighbors(3) == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("rewiring conserves the edge count and basic sanity") {
    for (std::uint64_t seed : {1ull, 7ull, 42ull, 1234ull}) {
        for (double p : {0.0, 0.1, 0.3, 1.0}) {
            Rng rng(seed);
            const auto g = build_ws_graph(100, 6, p, rng);
            CHECK(g.edge_count() == 300);
            std::size_t degree_sum = 0;
            for (std::size_t i = 0; i < 100; ++i) {
                const auto& nbrs = g.neighbors(i);
                degree_sum += nbrs.size();
                // sorted ascending, no self-loops, no duplicates
                CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
                CHECK(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end());
                CHECK(std::find(nbrs.begin(), nbrs.end(), static_cast<std::uint32_t>(i)) ==
                      nbrs.end());
            }
            CHECK(degree_sum == 600);
        }
    }
}

TEST_CASE("adjacency is symmetric") {
    Rng rng(42);
    const auto g = build_ws_graph(100, 6, 0.3, rng);
    for (std::size_t i = 0; i < 100; ++i) {
        for (std::uint32_t j : g.neighbors(i)) {
            const auto& back = g.neighbors(j);
            CHECK(std::find(back.begin(), back.end(), static_cast<std::uint32_t>(i)) !=
                  back.end());
        }
    }
}

TEST_CASE("default-parameter graph is connected") {
    Rng rng(derive_seed(42, StreamId::graph));
    const auto g = build_ws_graph(100, 6, 0.3, rng);
    CHECK(connected(g));
}

TEST_CASE("same seed, same graph") {
    Rng a(42), b(42), c(43);
    const auto g1 = build_ws_graph(100, 6, 0.3, a);
    const auto g2 = build_ws_graph(100, 6, 0.3, b);
    const auto g3 = build_ws_graph(100, 6, 0.3, c);
    bool same = true, differs = false;
    for (std::size_t i = 0; i < 100; ++i) {
        if (g1.neighbors(i) != g2.neighbors(i)) same = false;
        if (g1.neighbors(i) != g3.neighbors(i)) differs = true;
    }
    CHECK(same);
    CHECK(differs);
}

TEST_CASE("full rewiring keeps the degree sum") {
    Rng rng(5);
    const auto g = build_ws_graph(60, 4, 1.0, rng);
    CHECK(g.edge_count() == 120);
}

TEST_CASE("parameter validation") {
    Rng rng(1);
    CHECK_THROWS_AS(build_ws_graph(100, 5, 0.3, rng), std::invalid_argument); // odd k
    CHECK_THROWS_AS(build_ws_graph(6, 6, 0.3, rng), std::invalid_argument);   // k >= n
    CHECK_THROWS_AS(build_ws_graph(100, 0, 0.3, rng), std::invalid_argument); // k < 2
    CHECK_THROWS_AS(build_ws_graph(100, 6, 1.5, rng), std::invalid_argument); // p > 1
    CHECK_THROWS_AS(build_ws_graph(100, 6, -0.1, rng), std::invalid_argument);
}

TEST_CASE("neighbors rejects out-of-range indices") {
    Rng rng(1);
    const auto g = build_ws_graph(10, 2, 0.0, rng);
    CHECK_THROWS_AS(g.neighbors(10), std::out_of_range);
    CHECK_THROWS_AS(g.neighbors(9999), std::out_of_range);
}

TEST_CASE("edge list export") {
    Rng rng(1);
    const auto g = build_ws_graph(4, 2, 0.0, rng);
    std::ostringstream out;
    write_edgelist(g, out);
    CHECK(out.str() == "0 1\n0 3\n1 2\n2 3\n");
}
