#ifndef CBERLAB_PATTERN_HPP
#define CBERLAB_PATTERN_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cberlab/group.hpp"

namespace cberlab {

struct RelationSymbol {
    std::string name;
    int arity = 1;
    bool operator==(const RelationSymbol&) const = default;
};

/// A finite relational language: relation symbols with arities.
class Language {
public:
    Language() = default;
    explicit Language(std::vector<RelationSymbol> symbols);

    const std::vector<RelationSymbol>& symbols() const { return symbols_; }
    bool has(const std::string& name) const;
    int arity(const std::string& name) const;
    bool sublanguage_of(const Language& other) const;
    Language united(const Language& other) const;

    bool operator==(const Language&) const = default;

private:
    std::vector<RelationSymbol> symbols_;  // sorted by name
};

using Tuple = std::vector<Element>;

struct SublanguageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A finite relational structure whose universe is a finite subset of a
/// group. Immutable by convention; all operations return new values.
struct Pattern {
    GroupModel group = GroupModel(GroupKind::Z, 1);
    Language language;
    std::vector<Element> universe;  // sorted
    std::map<std::string, std::set<Tuple>> relations;

    bool operator==(const Pattern& other) const {
        return group == other.group && language == other.language &&
               universe == other.universe && relations == other.relations;
    }

    bool in_universe(const Element& g) const;
    bool holds(const std::string& rel, const Tuple& t) const;
    void add(const std::string& rel, Tuple t);
    void validate() const;  // tuples inside universe, arities match
};

Pattern make_pattern(const GroupModel& g, const Language& lang,
                     std::vector<Element> universe);

/// Logic action: universe becomes gamma * universe(A), relations transported.
Pattern translate(const Element& gamma, const Pattern& a);

Pattern reduct(const Pattern& a, const Language& sub);
Pattern restrict_to(const Pattern& a, const std::vector<Element>& s);

bool is_expansion(const Pattern& astar, const Pattern& a);

/// True iff the translated copy gamma*A0 sits inside A exactly:
/// gamma*universe(A0) is contained in universe(A) and the restriction of A
/// (reduced to A0's language) there equals translate(gamma, A0).
bool occurs_at(const Pattern& a0, const Pattern& a, const Element& gamma);

std::set<std::pair<int, int>> equality_type(const Tuple& t);

// Pattern JSON: {"group":.., "language":[{"name","arity"}..], "universe":[..],
// "relations":{"R":[[..]..]}}. Round-trips bit-exactly.
nlohmann::json element_to_json(const GroupModel& g, const Element& e);
Element element_from_json(const GroupModel& g, const nlohmann::json& j);
nlohmann::json pattern_to_json(const Pattern& p);
Pattern pattern_from_json(const nlohmann::json& j);

/// Canonical code of a pattern: its canonical JSON rendered to a string.
/// Equal patterns have equal codes and vice versa.
std::string canonical_code(const Pattern& p);

/// FNV-1a hash of the canonical code, hex-encoded; used as table-rule keys.
std::string canonical_hash(const Pattern& p);

}  // namespace cberlab

#endif
