#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cberlab/local_rule.hpp"

namespace cberlab {

// Adversary search: given an equivariant local rule claiming to solve one of
// the expansion problems, look for a finite Z-pattern on which the rule's
// own outputs are jointly inconsistent with the target class — an L-cycle
// for linearization, a bichromatic marked set for ramsey, a non-convex
// marked set for the Z-line selector.  Gadget constructions are tried first,
// then a bounded seeded search; coming up empty is NOT a correctness proof.
enum class AdversaryProblem { Ramsey, Linearization, Zline };

struct DefeatWitness {
    bool found = false;
    AdversaryProblem problem = AdversaryProblem::Linearization;
    Pattern pattern;
    std::string reason;  // "NO-DEFEAT-FOUND" when !found
    nlohmann::json details = nlohmann::json::object();
    std::vector<Element> occurrences;
};

struct RuleBudgetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Throws RuleBudgetError when rule.radius > 3.
DefeatWitness adversary(AdversaryProblem problem, const LocalRule& rule);

// Reapplies the rule to the recorded pattern and checks that the recorded
// inconsistency is really produced.
bool replay_defeat(const LocalRule& rule, const DefeatWitness& witness);

// Inconsistency check on an already-decorated window (used by the search and
// by replay).
std::optional<DefeatWitness> check_defeat(AdversaryProblem problem, const Pattern& pattern,
                                          const DecoratedWindow& window);

nlohmann::json witness_to_json(const DefeatWitness& w);
DefeatWitness witness_from_json(const nlohmann::json& j);

// The naive rules the gallery defeats.
LocalRule coordinate_order_rule();       // linearization: x always before x+1
LocalRule all_r_ball_rule(int radius);   // ramsey: mark x iff its ball is all-R
LocalRule match_a0_rule();               // zline: mark x iff its ball matches A0
                                         // (an isolated A-vertex)

}  // namespace cberlab
