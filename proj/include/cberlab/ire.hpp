#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cberlab/simplex.hpp"

namespace cberlab {

// Finite-window certification on Z: a decorated-pattern distribution on the
// window {0,...,n-1} must project to its base marginal and have equal
// left/right one-step marginals (shift consistency).  Feasibility of these
// LPs is necessary for an invariant random expansion to exist.
enum class IreFamily { Trivial, Linearization, Ramsey };

struct IreOptions {
    IreFamily family = IreFamily::Ramsey;
    int n = 1;
    Rational p = Rational(1, 2);   // probability of colour R per pair (ramsey)
    bool require_nonempty = false; // ramsey: marked set must be nonempty
    std::optional<Rational> min_density;  // ramsey: require P[0 marked] >= value
    bool maximize_density = false;        // ramsey: objective P[0 marked]
};

struct LpSizeError : std::runtime_error {
    long long count;
    explicit LpSizeError(long long c)
        : std::runtime_error("decorated-pattern enumeration too large: " + std::to_string(c) +
                             " variables (limit 2000000)"),
          count(c) {}
};

struct IreBuild {
    LpProblem lp;
    std::vector<std::string> var_labels;
};

IreBuild build_ire_lp(const IreOptions& opts);

struct IreResult {
    IreOptions opts;
    LpSolution sol;
};

IreResult solve_ire(const IreOptions& opts);

// Rebuild the LP from the recorded options and recheck the certificate in
// exact arithmetic.
bool verify_ire(const IreResult& result);

nlohmann::json ire_to_json(const IreResult& result);
IreResult ire_from_json(const nlohmann::json& j);

// delta*(n): maximal P[0 marked] over shift-consistent distributions of
// (pair colouring, homogeneous marked subset) whose colouring marginal is
// iid with parameter p.
Rational max_marked_density(int n, const Rational& p);

}  // namespace cberlab
