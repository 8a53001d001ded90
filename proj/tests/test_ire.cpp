#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/ire.hpp"

using namespace cberlab;

TEST_CASE("delta*(n) at p = 1/2: frozen exact values") {
    CHECK(max_marked_density(1, Rational(1, 2)) == Rational(1));
    CHECK(max_marked_density(2, Rational(1, 2)) == Rational(1));
    CHECK(max_marked_density(3, Rational(1, 2)) == Rational(3, 4));
    CHECK(max_marked_density(4, Rational(1, 2)) == Rational(11, 16));
}

TEST_CASE("ramsey feasibility without density floor") {
    IreOptions o;
    o.family = IreFamily::Ramsey;
    o.n = 3;
    IreResult r = solve_ire(o);
    CHECK(r.sol.status == LpStatus::Optimal);
    CHECK(verify_ire(r));
}

TEST_CASE("density floor above delta* is exactly infeasible") {
    IreOptions o;
    o.family = IreFamily::Ramsey;
    o.n = 4;
    o.min_density = Rational(9, 10);  // delta*(4) = 11/16 < 9/10
    IreResult r = solve_ire(o);
    REQUIRE(r.sol.status == LpStatus::Infeasible);
    CHECK(verify_ire(r));

    // Just below delta* stays feasible.
    o.min_density = Rational(11, 16) - Rational(1, 1000);
    r = solve_ire(o);
    CHECK(r.sol.status == LpStatus::Optimal);
    CHECK(verify_ire(r));
}

TEST_CASE("linearization windows are feasible") {
    for (int n = 1; n <= 4; ++n) {
        IreOptions o;
        o.family = IreFamily::Linearization;
        o.n = n;
        IreResult r = solve_ire(o);
        REQUIRE(r.sol.status == LpStatus::Optimal);
        CHECK(verify_ire(r));
    }
}

TEST_CASE("trivial family solves") {
    IreOptions o;
    o.family = IreFamily::Trivial;
    o.n = 3;
    IreResult r = solve_ire(o);
    CHECK(r.sol.status == LpStatus::Optimal);
    CHECK(verify_ire(r));
}

TEST_CASE("certificates survive a JSON round trip") {
    IreOptions o;
    o.family = IreFamily::Ramsey;
    o.n = 3;
    o.maximize_density = true;
    IreResult r = solve_ire(o);
    IreResult back = ire_from_json(ire_to_json(r));
    CHECK(back.sol.status == r.sol.status);
    CHECK(back.sol.value == r.sol.value);
    CHECK(back.sol.x == r.sol.x);
    CHECK(verify_ire(back));

    // Tampering is detected.
    IreResult bad = back;
    if (!bad.sol.x.empty()) bad.sol.x[0] += Rational(1, 7);
    CHECK(!verify_ire(bad));
}

TEST_CASE("oversized windows are refused, not attempted") {
    IreOptions o;
    o.family = IreFamily::Ramsey;
    o.n = 9;  // 36 pairs: 2^36 colourings overflow any reasonable budget
    CHECK_THROWS_AS((void)build_ire_lp(o), LpSizeError);
    try {
        (void)build_ire_lp(o);
    } catch (const LpSizeError& e) {
        CHECK(e.count > 2000000);
    }
}

TEST_CASE("the LP really encodes shift consistency") {
    IreOptions o;
    o.family = IreFamily::Ramsey;
    o.n = 2;
    IreBuild b = build_ire_lp(o);
    CHECK(b.lp.num_cols() == static_cast<int>(b.var_labels.size()));
    // A shift-consistency row: rhs 0 with +1/-1 entries balancing the two
    // one-step marginals.
    std::vector<int> pos(b.lp.rhs.size(), 0), neg(b.lp.rhs.size(), 0);
    for (const auto& column : b.lp.cols)
        for (const auto& [r, v] : column)
            (v > 0 ? pos : neg)[std::size_t(r)] += 1;
    bool has_shift = false;
    for (std::size_t r = 0; r < b.lp.rhs.size(); ++r)
        if (b.lp.rhs[r] == 0 && pos[r] > 0 && neg[r] > 0) has_shift = true;
    CHECK(has_shift);
}
