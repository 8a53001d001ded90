#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/colouring.hpp"
#include "cberlab/rng.hpp"

using namespace cberlab;

namespace {

GroupModel z() { return GroupModel(GroupKind::Z, 1); }

Element ze(int k) { return z().parse_element(std::to_string(k)); }

Pattern line(int radius, const std::vector<int>& marks) {
    GroupModel g = z();
    Pattern p = make_pattern(g, Language({{"E", 2}, {"M", 1}}), g.ball(radius));
    for (int x = -radius; x < radius; ++x) p.add("E", {ze(x), ze(x + 1)});
    for (int m : marks) p.add("M", {ze(m)});
    return p;
}

Pattern unmarked_line(int radius) {
    GroupModel g = z();
    Pattern p = make_pattern(g, Language({{"E", 2}}), g.ball(radius));
    for (int x = -radius; x < radius; ++x) p.add("E", {ze(x), ze(x + 1)});
    return p;
}

}  // namespace

TEST_CASE("single mark breaks symmetry near the mark") {
    Pattern p = line(5, {0});
    ColouringState st = equivariant_colouring(p, 2);
    CHECK(!st.colour.empty());
    CHECK(properly_coloured(p, st.colour));
    for (const auto& [v, c] : st.colour) {
        CHECK(c >= 0);
        CHECK(c <= 2);
    }
}

TEST_CASE("the unmarked line colours nothing") {
    ColouringState st = equivariant_colouring(unmarked_line(6), 2);
    CHECK(st.colour.empty());
    CHECK(st.witness.empty());
    CHECK(st.uncoloured.size() == 13);
}

TEST_CASE("witness levels separate neighbours") {
    Pattern p = line(6, {-3, 0, 1});
    ColouringState st = equivariant_colouring(p, 2);
    for (const auto& [v, lvl] : st.witness) {
        for (const auto& s : {ze(1), ze(-1)}) {
            Element u = p.group.mul(v, s);
            auto it = st.witness.find(u);
            if (it != st.witness.end() && p.holds("E", {std::min(v, u), std::max(v, u)}))
                CHECK(lvl != it->second);
        }
    }
}

TEST_CASE("random marked lines: proper, bounded, deterministic") {
    for (std::uint64_t t = 0; t < 40; ++t) {
        CounterRng rng(5, t);
        std::vector<int> marks;
        for (int x = -6; x <= 6; ++x)
            if (rng.bernoulli(0.5)) marks.push_back(x);
        Pattern p = line(6, marks);
        ColouringState a = equivariant_colouring(p, 2);
        ColouringState b = equivariant_colouring(p, 2);
        CHECK(properly_coloured(p, a.colour));
        CHECK(a.colour == b.colour);
        for (const auto& [v, c] : a.colour) CHECK(c <= 2);
        // colour map plus uncoloured list partitions the universe
        CHECK(a.colour.size() + a.uncoloured.size() == p.universe.size());
    }
}

TEST_CASE("translation reproduces translated colours") {
    Pattern p = line(5, {-2, 1});
    ColouringState st = equivariant_colouring(p, 2);
    Element gamma = ze(3);
    ColouringState st2 = equivariant_colouring(translate(gamma, p), 2);
    REQUIRE(st.colour.size() == st2.colour.size());
    for (const auto& [v, c] : st.colour)
        CHECK(st2.colour.at(p.group.mul(gamma, v)) == c);
}

TEST_CASE("improper assignments are rejected by the checker") {
    Pattern p = line(3, {0});
    std::map<Element, int> bad = {{ze(0), 1}, {ze(1), 1}};
    CHECK(!properly_coloured(p, bad));
}
