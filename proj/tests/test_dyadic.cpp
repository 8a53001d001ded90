#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "cberlab/dyadic.hpp"

using namespace cberlab;

namespace {

// All zeros-tail points with prefixes of length <= bits in one F0 class
// (fixed prefix-weight parity), ascending under l_compare.
std::vector<DyadicPoint> sorted_class(int bits, int parity) {
    std::vector<DyadicPoint> out;
    for (unsigned mask = 0; mask < (1u << bits); ++mask) {
        DyadicPoint x;
        for (int i = 0; i < bits; ++i) x.prefix.push_back(int((mask >> i) & 1u));
        // The excluded point stays in the class: it takes part in the order
        // and can be a successor image, it just has no successor of its own.
        x = canonical(x);
        if (__builtin_popcount(mask) % 2 == parity) out.push_back(x);
    }
    std::sort(out.begin(), out.end(), [](const DyadicPoint& a, const DyadicPoint& b) {
        return l_compare(a, b) == Cmp::LT;
    });
    return out;
}

}  // namespace

TEST_CASE("parsing, printing and canonical form") {
    DyadicPoint x = parse_dyadic("0110|0");
    CHECK(to_string(x) == "011|0");  // trailing tail bit stripped
    CHECK(parse_dyadic(to_string(x)) == x);
    CHECK(parse_dyadic("0111|1") == parse_dyadic("0|1"));
    DyadicPoint sym = parse_dyadic("01|t");
    CHECK(sym.tail == DyadicTail::Symbolic);
    CHECK(parse_dyadic(to_string(sym)) == sym);
}

TEST_CASE("F0: evenly many differences") {
    CHECK(f0_equivalent(parse_dyadic("00|0"), parse_dyadic("11|0")));
    CHECK(!f0_equivalent(parse_dyadic("00|0"), parse_dyadic("1|0")));
    CHECK(f0_equivalent(parse_dyadic("|0"), parse_dyadic("|0")));
    // Different concrete tails differ in infinitely many coordinates.
    CHECK(!f0_equivalent(parse_dyadic("|0"), parse_dyadic("|1")));
}

TEST_CASE("order rule on hand pairs") {
    // x = 000..., y = 110...: the last difference is coordinate 1 and the sum
    // of x below it is 0, so x < y.
    CHECK(l_compare(parse_dyadic("|0"), parse_dyadic("11|0")) == Cmp::LT);
    // x = 100..., y = 010...: last difference at 1, sum of x below = 1: x > y.
    CHECK(l_compare(parse_dyadic("1|0"), parse_dyadic("01|0")) == Cmp::GT);
    CHECK(l_compare(parse_dyadic("01|0"), parse_dyadic("01|0")) == Cmp::EQ);
}

TEST_CASE("successor cases of the interval exchange") {
    // f(0 i x) = 1 (1-i) x
    CHECK(dyadic_successor(parse_dyadic("00|0")) == parse_dyadic("11|0"));
    CHECK(dyadic_successor(parse_dyadic("01|0")) == parse_dyadic("10|0"));
    // f(1 0^n 1 i x) = 0^{n+1} 1 (1-i) x
    CHECK(dyadic_successor(parse_dyadic("11|0")) == parse_dyadic("011|0"));
    CHECK(dyadic_successor(parse_dyadic("101|0")) == parse_dyadic("0011|0"));
}

TEST_CASE("the excluded point rejects the successor map") {
    CHECK_THROWS_AS((void)dyadic_successor(parse_dyadic("1|0")), ExcludedPointError);
    CHECK_THROWS_AS((void)dyadic_successor(parse_dyadic("10|0")), ExcludedPointError);
}

TEST_CASE("symbolic tails refuse undetermined comparisons") {
    // Misaligned symbolic tails cannot be compared coordinatewise.
    CHECK_THROWS_AS((void)l_compare(parse_dyadic("0|t"), parse_dyadic("01|t")),
                    UndeterminedTailError);
    // Aligned ones can.
    CHECK(l_compare(parse_dyadic("00|t"), parse_dyadic("11|t")) == Cmp::LT);
}

TEST_CASE("successor is the exact class successor on 2^10 truncations") {
    for (int parity : {0, 1}) {
        auto cls = sorted_class(10, parity);
        const DyadicPoint excluded = parse_dyadic("1|0");
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (cls[i] == excluded) continue;
            DyadicPoint y = dyadic_successor(cls[i]);
            CHECK(l_compare(cls[i], y) == Cmp::LT);
            CHECK(f0_equivalent(cls[i], y));
            if (i + 1 < cls.size() && y != cls[i + 1]) {
                // The true successor escaped to a longer prefix; it must
                // still be strictly below the next truncation.
                CHECK(y.prefix.size() > 10);
                CHECK(l_compare(y, cls[i + 1]) == Cmp::LT);
            }
        }
    }
}

TEST_CASE("flip_head is an order-reversing involution") {
    auto even = sorted_class(8, 0);
    for (std::size_t i = 0; i < even.size(); ++i)
        for (std::size_t j = i + 1; j < even.size(); ++j) {
            DyadicPoint fa = flip_head(even[i]), fb = flip_head(even[j]);
            CHECK(flip_head(fa) == even[i]);
            CHECK(l_compare(fb, fa) == Cmp::LT);  // i < j reversed
            CHECK(f0_equivalent(fa, fb));
        }
}

TEST_CASE("transitivity on exhaustive small triples") {
    auto cls = sorted_class(6, 0);
    for (const auto& a : cls)
        for (const auto& b : cls)
            for (const auto& c : cls) {
                if (l_compare(a, b) == Cmp::LT && l_compare(b, c) == Cmp::LT)
                    CHECK(l_compare(a, c) == Cmp::LT);
            }
}
