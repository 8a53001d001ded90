#ifndef CBERLAB_LOCAL_RULE_HPP
#define CBERLAB_LOCAL_RULE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cberlab/pattern.hpp"

namespace cberlab {

using Decoration = nlohmann::json;

/// A finite-radius equivariant decoration rule. The body is a total
/// deterministic function of the identity-centred pattern on B(r).
///
/// Rules see group coordinates, not isomorphism classes: two isomorphic but
/// differently-embedded ball patterns may receive different decorations.
/// That is exactly equivariance, not isomorphism-invariance.
struct LocalRule {
    int radius = 0;
    Language base_language;
    std::string name;
    std::function<Decoration(const Pattern&)> body;

    /// Table-form rule: canonical pattern hash -> decoration. Missing
    /// entries fall back to `fallback`.
    static LocalRule from_table(int radius, Language lang, std::string name,
                                std::map<std::string, Decoration> table,
                                Decoration fallback);
};

/// Serialization of table-form rules (JSON map hash -> decoration).
nlohmann::json table_rule_to_json(const LocalRule& rule,
                                  const std::map<std::string, Decoration>& table,
                                  const Decoration& fallback);

struct DecoratedWindow {
    Pattern base;
    std::vector<Element> interior;  // determined elements, sorted
    std::map<Element, Decoration> decorations;
};

/// Applies a rule to a pattern viewed as a window: every x whose r-ball
/// x*B(r) lies inside the universe gets
///   decoration(x) = body(translate(x^-1, restrict(A, x*B(r)))).
/// Elements too close to the boundary stay undetermined.
DecoratedWindow apply_rule(const LocalRule& rule, const Pattern& a);

struct EquivarianceViolation {
    int sample_index;
    Element gamma;
    Element point;  // point of the original window where the identity fails
    Decoration got, expected;
};

struct EquivarianceReport {
    int samples_checked = 0;
    int points_checked = 0;
    std::vector<EquivarianceViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Verifies decoration_{translate(gamma,A)}(gamma x) = decoration_A(x) on the
/// overlap of determined interiors, for each supplied sample.
EquivarianceReport check_equivariance(const LocalRule& rule,
                                      const std::vector<std::pair<Pattern, Element>>& samples);

/// The structuring -> map direction of the finite correspondence: the
/// pulled-back pattern F(x) on B(r), defined tuple-by-tuple by
///   R^{F(x)}(g_1,...,g_n)  iff  R^A(g_1^-1 x, ..., g_n^-1 x).
/// Requires B(r)*x to be contained in the universe of A.
Pattern structure_to_map(const Pattern& a, const Element& x, int radius);

}  // namespace cberlab

#endif
