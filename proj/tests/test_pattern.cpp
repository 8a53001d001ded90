#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/pattern.hpp"

using namespace cberlab;

namespace {

Pattern line_pattern(int radius) {
    GroupModel g(GroupKind::Z, 1);
    Pattern p = make_pattern(g, Language({{"E", 2}, {"M", 1}}), g.ball(radius));
    for (int x = -radius; x < radius; ++x)
        p.add("E", {g.parse_element(std::to_string(x)), g.parse_element(std::to_string(x + 1))});
    p.add("M", {g.identity()});
    return p;
}

}  // namespace

TEST_CASE("language arity lookup and sublanguage") {
    Language l({{"E", 2}, {"M", 1}});
    CHECK(l.has("E"));
    CHECK(l.arity("E") == 2);
    CHECK(Language({{"E", 2}}).sublanguage_of(l));
    CHECK(!l.sublanguage_of(Language({{"E", 2}})));
}

TEST_CASE("translate is an action") {
    GroupModel g(GroupKind::Z, 1);
    Pattern p = line_pattern(2);
    Element one = g.parse_element("1"), two = g.parse_element("2");
    Pattern p1 = translate(one, translate(one, p));
    Pattern p2 = translate(two, p);
    CHECK(p1 == p2);
    CHECK(translate(g.identity(), p) == p);
    // Relations move with the universe.
    CHECK(p2.holds("M", {two}));
    CHECK(!p2.holds("M", {g.identity()}));
}

TEST_CASE("reduct and restriction") {
    GroupModel g(GroupKind::Z, 1);
    Pattern p = line_pattern(2);
    Pattern r = reduct(p, Language({{"E", 2}}));
    CHECK(!r.language.has("M"));
    CHECK(r.relations.count("M") == 0);
    CHECK(is_expansion(p, r));
    Pattern s = restrict_to(p, {g.parse_element("-1"), g.identity(), g.parse_element("1")});
    CHECK(s.universe.size() == 3);
    CHECK(s.holds("E", {g.parse_element("-1"), g.identity()}));
    CHECK(!s.holds("E", {g.parse_element("1"), g.parse_element("2")}));
}

TEST_CASE("occurs_at finds exactly the translated copies") {
    GroupModel g(GroupKind::Z, 1);
    Pattern big = line_pattern(3);
    // A0: single marked vertex at the identity.
    Pattern a0 = make_pattern(g, Language({{"M", 1}}), {g.identity()});
    a0.add("M", {g.identity()});
    int hits = 0;
    for (const auto& gamma : g.ball(3))
        if (occurs_at(a0, big, gamma)) ++hits;
    CHECK(hits == 1);  // only gamma = 0: M holds nowhere else
    CHECK(occurs_at(a0, big, g.identity()));
}

TEST_CASE("equality type") {
    GroupModel g(GroupKind::Z, 1);
    Element a = g.identity(), b = g.parse_element("1");
    auto t = equality_type({a, b, a});
    CHECK(t.count({0, 2}) == 1);
    CHECK(t.count({0, 1}) == 0);
}

TEST_CASE("JSON round trip is exact") {
    Pattern p = line_pattern(2);
    Pattern q = pattern_from_json(pattern_to_json(p));
    CHECK(p == q);
    CHECK(canonical_code(p) == canonical_code(q));
    CHECK(canonical_hash(p) == canonical_hash(q));
    Pattern r = translate(p.group.parse_element("1"), p);
    CHECK(canonical_hash(p) != canonical_hash(r));
}

TEST_CASE("validation rejects out-of-universe tuples") {
    GroupModel g(GroupKind::Z, 1);
    Pattern p = make_pattern(g, Language({{"E", 2}}), g.ball(1));
    CHECK_THROWS_AS(p.add("E", {g.identity(), g.parse_element("5")}), DomainError);
    CHECK_THROWS_AS(p.add("F", {g.identity()}), SublanguageError);
}
