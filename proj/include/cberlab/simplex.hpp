#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cberlab {

using Rational = boost::multiprecision::cpp_rational;

// A x = rhs, x >= 0, maximise obj . x.  Columns are sparse.
struct LpProblem {
    int rows = 0;
    std::vector<std::vector<std::pair<int, Rational>>> cols;
    std::vector<Rational> obj;
    std::vector<Rational> rhs;
    std::vector<std::string> col_names;
    std::vector<std::string> row_names;

    int add_column(std::vector<std::pair<int, Rational>> entries, Rational objective,
                   std::string name = {});
    int num_cols() const { return static_cast<int>(cols.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// For Optimal, `dual` satisfies dual . a_j >= obj_j for every column and
// obj . x == dual . rhs, which certifies optimality on its own.  For
// Infeasible, `dual` is a Farkas vector: dual . a_j >= 0 for every column
// while dual . rhs < 0.  For Unbounded, `x` is feasible and `ray` is an
// improving recession direction.
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value = 0;
    std::vector<Rational> x;
    std::vector<Rational> dual;
    std::vector<Rational> ray;
    long iterations = 0;
};

LpSolution solve_lp(const LpProblem& lp);

// Recheck a solution against the problem data from scratch, exactly.
bool verify_solution(const LpProblem& lp, const LpSolution& sol);

}  // namespace cberlab
