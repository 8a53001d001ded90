#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cberlab/rng.hpp"
#include "cberlab/simplex.hpp"

using namespace cberlab;

TEST_CASE("one-variable verdicts with verified certificates") {
    LpProblem feas;
    feas.rows = 1;
    feas.rhs = {Rational(1)};
    feas.add_column({{0, Rational(1)}}, Rational(0), "x");
    LpSolution s = solve_lp(feas);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == 1);
    CHECK(verify_solution(feas, s));

    LpProblem infeas;
    infeas.rows = 1;
    infeas.rhs = {Rational(-1)};
    infeas.add_column({{0, Rational(1)}}, Rational(0), "x");
    s = solve_lp(infeas);
    REQUIRE(s.status == LpStatus::Infeasible);
    CHECK(verify_solution(infeas, s));

    LpProblem unb;
    unb.rows = 0;
    unb.add_column({}, Rational(1), "x");
    s = solve_lp(unb);
    REQUIRE(s.status == LpStatus::Unbounded);
    CHECK(verify_solution(unb, s));
}

TEST_CASE("hand-checked optimum with exact rationals") {
    // max x1/3 + x2 subject to x1 + x2 = 1, x1 - x2 + x3 = 1/2, x >= 0.
    // Optimum at x1 = 0, x2 = 1, x3 = 3/2 with value 1.
    LpProblem lp;
    lp.rows = 2;
    lp.rhs = {Rational(1), Rational(1, 2)};
    lp.add_column({{0, Rational(1)}, {1, Rational(1)}}, Rational(1, 3), "x1");
    lp.add_column({{0, Rational(1)}, {1, Rational(-1)}}, Rational(1), "x2");
    lp.add_column({{1, Rational(1)}}, Rational(0), "x3");
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == Rational(1));
    CHECK(s.x[0] == 0);
    CHECK(s.x[1] == 1);
    CHECK(s.x[2] == Rational(3, 2));
    CHECK(verify_solution(lp, s));
}

TEST_CASE("degenerate vertices do not stall the solver") {
    // Multiple rows force the same basic variable to zero level.
    LpProblem lp;
    lp.rows = 3;
    lp.rhs = {Rational(0), Rational(0), Rational(1)};
    lp.add_column({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}, Rational(1), "a");
    lp.add_column({{0, Rational(1)}, {2, Rational(1)}}, Rational(2), "b");
    lp.add_column({{1, Rational(1)}, {2, Rational(1)}}, Rational(3), "c");
    lp.add_column({{2, Rational(1)}}, Rational(0), "d");
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(verify_solution(lp, s));
}

TEST_CASE("random balanced transportation problems are solved and verified") {
    for (std::uint64_t t = 0; t < 25; ++t) {
        CounterRng rng(31, t);
        int m = 2 + static_cast<int>(rng.below(4));
        int k = 2 + static_cast<int>(rng.below(4));
        std::vector<Rational> supply(static_cast<std::size_t>(m));
        Rational total = 0;
        for (auto& sp : supply) {
            sp = Rational(1 + long(rng.below(10)), 1 + long(rng.below(3)));
            total += sp;
        }
        std::vector<Rational> demand(static_cast<std::size_t>(k));
        Rational left = total;
        for (int j = 0; j < k; ++j) {
            demand[std::size_t(j)] = (j + 1 == k) ? left : left / (k - j);
            left -= demand[std::size_t(j)];
        }
        LpProblem lp;
        lp.rows = m + k;
        lp.rhs.assign(std::size_t(m + k), Rational(0));
        for (int i = 0; i < m; ++i) lp.rhs[std::size_t(i)] = supply[std::size_t(i)];
        for (int j = 0; j < k; ++j) lp.rhs[std::size_t(m + j)] = demand[std::size_t(j)];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j)
                lp.add_column({{i, Rational(1)}, {m + j, Rational(1)}},
                              -Rational(1 + long(rng.below(7))), "x");
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(verify_solution(lp, s));

        // Shipped amounts meet every supply and demand exactly.
        for (int i = 0; i < m; ++i) {
            Rational row = 0;
            for (int j = 0; j < k; ++j) row += s.x[std::size_t(i * k + j)];
            CHECK(row == supply[std::size_t(i)]);
        }

        // One perturbed supply makes the balance impossible.
        LpProblem bad = lp;
        bad.rhs[0] += 1;
        LpSolution f = solve_lp(bad);
        REQUIRE(f.status == LpStatus::Infeasible);
        CHECK(verify_solution(bad, f));
        // The Farkas vector really separates: y.b < 0 <= y.a_j.
        Rational yb = 0;
        for (int r = 0; r < bad.rows; ++r) yb += f.dual[std::size_t(r)] * bad.rhs[std::size_t(r)];
        CHECK(yb < 0);
    }
}

TEST_CASE("tampered certificates fail verification") {
    LpProblem lp;
    lp.rows = 1;
    lp.rhs = {Rational(2)};
    lp.add_column({{0, Rational(1)}}, Rational(1), "x");
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    LpSolution bad = s;
    bad.x[0] += 1;
    CHECK(!verify_solution(lp, bad));
    LpSolution bad2 = s;
    bad2.value += 1;
    CHECK(!verify_solution(lp, bad2));
}
