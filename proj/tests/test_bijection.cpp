#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cberlab/bijection.hpp"
#include "cberlab/rng.hpp"

using namespace cberlab;

namespace {

GroupModel z() { return GroupModel(GroupKind::Z, 1); }

Element ze(int k) { return z().parse_element(std::to_string(k)); }

}  // namespace

TEST_CASE("hand-checked trace: A = {0}, B = {1}") {
    GroupModel g = z();
    int stages = 5;  // gamma: 0, -1, 1, -2, 2
    Window w = g.window(2, bijection_padding(g, stages));
    BijectionTrace tr = greedy_bijection(g, {ze(0)}, {ze(1)}, w, stages);
    // gamma_0 = 0 and gamma_1 = -1 give empty stages; gamma_2 = 1 matches.
    CHECK(tr.stages[0].empty());
    CHECK(tr.stages[1].empty());
    CHECK(tr.stages[2] == std::vector<Element>{ze(0)});
    CHECK(tr.phi.at(ze(0)) == ze(1));
    CHECK(tr.phi.size() == 1);
    CHECK(tr.interior_dichotomy({ze(0)}, {ze(1)}));
}

TEST_CASE("equal sets are matched by gamma_0 = identity") {
    GroupModel g = z();
    Window w = g.window(3, bijection_padding(g, 1));
    std::vector<Element> a = {ze(-1), ze(0), ze(2)};
    BijectionTrace tr = greedy_bijection(g, a, a, w, 1);
    // Stage vectors are reported in the global element order (0, -1, 1, ...).
    CHECK(tr.stages[0] == std::vector<Element>{ze(0), ze(-1), ze(2)});
    for (const auto& x : a) CHECK(tr.phi.at(x) == x);
}

TEST_CASE("recursion, disjointness and dichotomy on random pairs") {
    GroupModel g = z();
    const int radius = 8;
    // Every quotient a^-1 b with a, b in the interior must be enumerated,
    // so the stage count covers the ball of twice the interior radius.
    int stages = static_cast<int>(g.ball(2 * radius).size());
    Window w = g.window(radius, bijection_padding(g, stages));
    auto interior = g.ball(radius);
    for (std::uint64_t t = 0; t < 50; ++t) {
        CounterRng rng(42, t);
        std::vector<Element> a, b;
        for (const auto& e : interior) {
            if (rng.bernoulli(0.5)) a.push_back(e);
            if (rng.bernoulli(0.5)) b.push_back(e);
        }
        BijectionTrace tr = greedy_bijection(g, a, b, w, stages);

        // Independent re-evaluation of X_n.
        std::set<Element> rem_a(a.begin(), a.end()), rem_b(b.begin(), b.end());
        auto gammas = g.enumerate(stages);
        for (std::size_t n = 0; n < gammas.size(); ++n) {
            std::vector<Element> xn;
            for (const auto& x : rem_a)
                if (rem_b.count(g.mul(x, gammas[n]))) xn.push_back(x);
            REQUIRE(xn == tr.stages[n]);
            for (const auto& x : xn) {
                rem_a.erase(x);
                rem_b.erase(g.mul(x, gammas[n]));
            }
        }
        // phi is injective with range inside B.
        std::set<Element> ran;
        std::set<Element> bs(b.begin(), b.end());
        for (const auto& [x, y] : tr.phi) {
            CHECK(ran.insert(y).second);
            CHECK(bs.count(y) == 1);
        }
        CHECK(tr.interior_dichotomy(a, b));
    }
}

TEST_CASE("insufficient padding raises TruncationError") {
    GroupModel g = z();
    Window w = g.window(4, 0);  // 9 stages need padding 2
    CHECK_THROWS_AS((void)greedy_bijection(g, {ze(0)}, {ze(1)}, w, 9), TruncationError);
}

TEST_CASE("padding formula dominates enumerated word lengths") {
    GroupModel g = z();
    for (int stages : {1, 3, 10, 25}) {
        int pad = bijection_padding(g, stages);
        for (const auto& gamma : g.enumerate(stages))
            CHECK(gamma.length() <= pad);
    }
}
