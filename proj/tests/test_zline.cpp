#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/zline.hpp"

using namespace cberlab;

namespace {

OrderSpec spec(std::vector<OrderBlock> blocks) {
    OrderSpec s;
    s.blocks = std::move(blocks);
    return s;
}

}  // namespace

TEST_CASE("unique maximal-frequency Z-block is selected") {
    OrderSpec s = spec({{"f", BlockTag::Fin, 3}, {"z1", BlockTag::Z, 0}, {"d", BlockTag::Dense, 0},
                        {"z2", BlockTag::Z, 0}});
    ZlineVerdict v = zline_select(s, {{"z1", Rational(1, 4)}, {"z2", Rational(1, 2)}});
    CHECK(v.in_x);
    CHECK(v.selected == "z2");
    CHECK(v.max_frequency == Rational(1, 2));
}

TEST_CASE("frequency ties go to the order-least block") {
    OrderSpec s = spec({{"z2", BlockTag::Z, 0}, {"z1", BlockTag::Z, 0}});
    // Order position, not the id, breaks the tie: z2 is listed first.
    ZlineVerdict v = zline_select(s, {{"z1", Rational(1, 3)}, {"z2", Rational(1, 3)}});
    CHECK(v.in_x);
    CHECK(v.selected == "z2");
}

TEST_CASE("no Z-block means NOT-IN-X") {
    OrderSpec s = spec({{"f", BlockTag::Fin, 2}, {"d", BlockTag::Dense, 0}});
    ZlineVerdict v = zline_select(s, {});
    CHECK(!v.in_x);
}

TEST_CASE("zero maximal frequency means NOT-IN-X") {
    OrderSpec s = spec({{"z1", BlockTag::Z, 0}});
    ZlineVerdict v = zline_select(s, {{"z1", Rational(0)}});
    CHECK(!v.in_x);
    CHECK(v.max_frequency == 0);
}

TEST_CASE("block lookup helpers") {
    OrderSpec s = spec({{"a", BlockTag::Fin, 1}, {"b", BlockTag::Z, 0}});
    CHECK(s.find("b") != nullptr);
    CHECK(s.find("c") == nullptr);
    CHECK(s.index_of("b") == 1);
    CHECK(!s.index_of("c").has_value());
}
