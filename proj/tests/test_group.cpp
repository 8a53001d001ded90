#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/group.hpp"

using namespace cberlab;

TEST_CASE("Z ball and enumeration") {
    GroupModel g(GroupKind::Z, 1);
    auto b = g.ball(3);
    REQUIRE(b.size() == 7);
    // Length-lex: identity first, then each length with the negative first.
    CHECK(g.to_string(b[0]) == "0");
    CHECK(g.to_string(b[1]) == "-1");
    CHECK(g.to_string(b[2]) == "1");
    CHECK(g.to_string(b[5]) == "-3");
    CHECK(g.to_string(b[6]) == "3");
    CHECK(g.enumerate(3) == std::vector<Element>{b[0], b[1], b[2]});
}

TEST_CASE("ball sizes against closed forms") {
    // |B_Z(r)| = 2r+1; |B_{Z^2}(r)| = 2r^2+2r+1; |B_{F_2}(r)| = 2*3^r - 1.
    GroupModel z(GroupKind::Z, 1), z2(GroupKind::ZPowD, 2), f2(GroupKind::Free, 2);
    for (int r = 0; r <= 4; ++r) {
        CHECK(z.ball(r).size() == std::size_t(2 * r + 1));
        CHECK(z2.ball(r).size() == std::size_t(2 * r * r + 2 * r + 1));
    }
    CHECK(f2.ball(1).size() == 5);
    CHECK(f2.ball(2).size() == 17);
    CHECK(f2.ball(3).size() == 53);
}

TEST_CASE("group laws hold on sampled triples") {
    for (GroupModel g : {GroupModel(GroupKind::ZPowD, 2), GroupModel(GroupKind::Free, 2)}) {
        auto ball = g.ball(2);
        for (const auto& a : ball)
            for (const auto& b : ball) {
                CHECK(g.mul(a, g.inv(a)) == g.identity());
                CHECK(g.mul(g.identity(), a) == a);
                CHECK(g.inv(g.mul(a, b)) == g.mul(g.inv(b), g.inv(a)));
            }
        for (const auto& a : ball)
            CHECK(g.parse_element(g.to_string(a)) == a);
    }
}

TEST_CASE("free reduction") {
    GroupModel f2(GroupKind::Free, 2);
    Element a = f2.parse_element("a");
    Element ainv = f2.inv(a);
    CHECK(f2.mul(a, ainv) == f2.identity());
    Element ab = f2.mul(a, f2.parse_element("b"));
    CHECK(ab.length() == 2);
    CHECK(f2.mul(ab, f2.inv(f2.parse_element("b"))) == a);
}

TEST_CASE("window interior and padding") {
    GroupModel g(GroupKind::Z, 1);
    Window w = g.window(2, 1);
    CHECK(w.radius == 2);
    CHECK(w.elements.size() == 7);  // padded ball B(3)
    CHECK(w.contains(g.parse_element("3")));
    CHECK(!w.contains(g.parse_element("4")));
}

TEST_CASE("model mismatch is rejected") {
    GroupModel z(GroupKind::Z, 1), z2(GroupKind::ZPowD, 2);
    Element e2 = z2.identity();
    CHECK(!z.valid(e2));
    CHECK_THROWS_AS((void)z.mul(z.identity(), e2), ModelMismatchError);
}

TEST_CASE("parse of model names") {
    CHECK(GroupModel::parse("Z") == GroupModel(GroupKind::Z, 1));
    CHECK(GroupModel::parse("Z^2") == GroupModel(GroupKind::ZPowD, 2));
    CHECK(GroupModel::parse("F2") == GroupModel(GroupKind::Free, 2));
    CHECK_THROWS(GroupModel::parse("Q"));
}
