#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cberlab/forest.hpp"
#include "cberlab/rng.hpp"

using namespace cberlab;

TEST_CASE("square with diagonal: one edge per cycle is dropped") {
    // 0-1-2-3-0 plus 0-2, single-stage exhaustion with one class.
    std::vector<EdgeId> edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}};
    Exhaustion ex = {{0, 0, 0, 0}};
    ForestResult fr = spanning_forest(4, edges, ex);
    REQUIRE(fr.ok());
    CHECK(fr.edges.size() == 3);
    UnionFind uf(4);
    for (const auto& [u, v] : fr.edges) CHECK(uf.unite(std::size_t(u), std::size_t(v)));
    for (int v = 1; v < 4; ++v) CHECK(uf.same(0, std::size_t(v)));
}

TEST_CASE("stage forests refine into the final tree") {
    // Two classes {0,1,2} and {3,4,5} merged in stage 1.
    std::vector<EdgeId> edges = {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {2, 3}, {0, 2}};
    Exhaustion ex = {{0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 0, 0}};
    ForestResult fr = spanning_forest(6, edges, ex);
    REQUIRE(fr.ok());
    // Stage 0 spans each class separately; no cross edge yet.
    for (const auto& [u, v] : fr.stages[0]) CHECK((u < 3) == (v < 3));
    CHECK(fr.stages[0].size() == 4);
    CHECK(fr.edges.size() == 5);
    CHECK(std::includes(fr.edges.begin(), fr.edges.end(), fr.stages[0].begin(),
                        fr.stages[0].end()));
}

TEST_CASE("disconnected final classes are reported, not papered over") {
    std::vector<EdgeId> edges = {{0, 1}};  // vertex 2 isolated
    Exhaustion ex = {{0, 0, 0}};
    ForestResult fr = spanning_forest(3, edges, ex);
    CHECK(!fr.ok());
    CHECK(fr.failed_classes == std::vector<int>{0});
}

TEST_CASE("random graphs against the union-find oracle") {
    for (std::uint64_t t = 0; t < 30; ++t) {
        CounterRng rng(17, t);
        const int n = 1000;
        std::set<EdgeId> es;
        for (int v = 1; v < n; ++v) {
            int u = static_cast<int>(rng.below(std::uint64_t(v)));
            es.insert({u, v});
        }
        for (int k = 0; k < n / 2; ++k) {
            int u = static_cast<int>(rng.below(n)), v = static_cast<int>(rng.below(n));
            if (u != v) es.insert({std::min(u, v), std::max(u, v)});
        }
        std::vector<EdgeId> edges(es.begin(), es.end());
        std::vector<int> bits(n);
        for (auto& b : bits) b = static_cast<int>(rng.below(8));
        Exhaustion ex;
        for (int s = 0; s < 4; ++s) {
            std::vector<int> stage(n);
            for (int v = 0; v < n; ++v) stage[std::size_t(v)] = bits[std::size_t(v)] >> s;
            ex.push_back(stage);
        }
        ForestResult fr = spanning_forest(n, edges, ex);
        REQUIRE(fr.ok());
        CHECK(fr.edges.size() == std::size_t(n - 1));
        for (std::size_t s = 0; s < fr.stages.size(); ++s) {
            UnionFind uf(n);
            for (const auto& [u, v] : fr.stages[s]) {
                CHECK(uf.unite(std::size_t(u), std::size_t(v)));  // acyclic
                CHECK(ex[s][std::size_t(u)] == ex[s][std::size_t(v)]);
            }
            if (s + 1 < fr.stages.size())
                CHECK(std::includes(fr.stages[s + 1].begin(), fr.stages[s + 1].end(),
                                    fr.stages[s].begin(), fr.stages[s].end()));
        }
    }
}

TEST_CASE("non-coarsening exhaustions are rejected") {
    std::vector<EdgeId> edges = {{0, 1}};
    Exhaustion bad = {{0, 0}, {0, 1}};  // stage 1 splits a stage-0 class
    CHECK_THROWS(spanning_forest(2, edges, bad));
}
