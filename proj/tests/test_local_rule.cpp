#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/local_rule.hpp"
#include "cberlab/rng.hpp"

using namespace cberlab;

namespace {

Pattern marked_line(int radius, std::uint64_t seed) {
    GroupModel g(GroupKind::Z, 1);
    Pattern p = make_pattern(g, Language({{"M", 1}}), g.ball(radius));
    CounterRng rng(seed);
    for (const auto& x : p.universe)
        if (rng.bernoulli(0.5)) p.add("M", {x});
    return p;
}

// Mark a point iff its own M-mark is set; radius 1 so boundary points stay
// undetermined.
LocalRule copy_rule() {
    LocalRule r;
    r.radius = 1;
    r.base_language = Language({{"M", 1}});
    r.name = "copy";
    r.body = [](const Pattern& ball) {
        return Decoration{{"marked", ball.holds("M", {ball.group.identity()})}};
    };
    return r;
}

}  // namespace

TEST_CASE("apply_rule determines exactly the shrunken interior") {
    Pattern p = marked_line(4, 11);
    DecoratedWindow w = apply_rule(copy_rule(), p);
    CHECK(w.interior.size() == 7);  // B(3) inside B(4)
    for (const auto& x : w.interior)
        CHECK(w.decorations.at(x).at("marked").get<bool>() ==
              p.holds("M", {x}));
}

TEST_CASE("rules are equivariant by construction") {
    LocalRule r = copy_rule();
    std::vector<std::pair<Pattern, Element>> samples;
    GroupModel g(GroupKind::Z, 1);
    for (std::uint64_t s = 0; s < 20; ++s)
        samples.push_back({marked_line(4, s), g.parse_element(std::to_string(int(s % 5) - 2))});
    EquivarianceReport rep = check_equivariance(r, samples);
    CHECK(rep.samples_checked == 20);
    CHECK(rep.points_checked > 0);
    CHECK(rep.ok());
}

TEST_CASE("a stateful body is caught as an equivariance violation") {
    LocalRule r;
    r.radius = 1;
    r.base_language = Language({{"M", 1}});
    r.name = "stateful";
    auto counter = std::make_shared<int>(0);
    r.body = [counter](const Pattern&) { return Decoration{{"k", (*counter)++ % 7}}; };
    std::vector<std::pair<Pattern, Element>> samples = {
        {marked_line(4, 3), GroupModel(GroupKind::Z, 1).parse_element("1")}};
    EquivarianceReport rep = check_equivariance(r, samples);
    CHECK(!rep.ok());
    CHECK(!rep.violations.empty());
}

TEST_CASE("table rules fall back and round-trip through JSON") {
    Pattern p = marked_line(3, 7);
    Pattern centre = translate(p.group.inv(p.universe[0]),
                               restrict_to(p, {p.universe[0]}));
    std::map<std::string, Decoration> table = {{canonical_hash(centre), Decoration{{"hit", true}}}};
    LocalRule r = LocalRule::from_table(0, Language({{"M", 1}}), "table", table,
                                        Decoration{{"hit", false}});
    nlohmann::json j = table_rule_to_json(r, table, Decoration{{"hit", false}});
    CHECK(j.at("radius").get<int>() == 0);
    CHECK(j.at("table").size() == 1);
    DecoratedWindow w = apply_rule(r, p);
    CHECK(w.interior.size() == p.universe.size());
}

TEST_CASE("structure_to_map pulls back relations pointwise") {
    GroupModel g(GroupKind::Z, 1);
    Pattern p = make_pattern(g, Language({{"M", 1}}), g.ball(3));
    Element two = g.parse_element("2");
    p.add("M", {two});
    // F(x) at x = 2 sees M at the identity of its ball.
    Pattern f = structure_to_map(p, two, 1);
    CHECK(f.holds("M", {g.identity()}));
    CHECK(!f.holds("M", {g.parse_element("1")}));
}
