#include "cberlab/pattern.hpp"

#include <algorithm>

namespace cberlab {

using nlohmann::json;

Language::Language(std::vector<RelationSymbol> symbols) : symbols_(std::move(symbols)) {
    std::sort(symbols_.begin(), symbols_.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    for (size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].arity < 1)
            throw std::invalid_argument("relation arity must be positive");
        if (i > 0 && symbols_[i].name == symbols_[i - 1].name)
            throw std::invalid_argument("duplicate relation symbol " + symbols_[i].name);
    }
}

bool Language::has(const std::string& name) const {
    for (const auto& s : symbols_)
        if (s.name == name) return true;
    return false;
}

int Language::arity(const std::string& name) const {
    for (const auto& s : symbols_)
        if (s.name == name) return s.arity;
    throw std::invalid_argument("unknown relation symbol " + name);
}

bool Language::sublanguage_of(const Language& other) const {
    for (const auto& s : symbols_) {
        if (!other.has(s.name) || other.arity(s.name) != s.arity) return false;
    }
    return true;
}

Language Language::united(const Language& other) const {
    std::vector<RelationSymbol> syms = symbols_;
    for (const auto& s : other.symbols_) {
        if (!has(s.name)) syms.push_back(s);
        else if (arity(s.name) != s.arity)
            throw std::invalid_argument("arity clash on " + s.name);
    }
    return Language(std::move(syms));
}

bool Pattern::in_universe(const Element& g) const {
    return std::binary_search(universe.begin(), universe.end(), g);
}

bool Pattern::holds(const std::string& rel, const Tuple& t) const {
    auto it = relations.find(rel);
    return it != relations.end() && it->second.count(t) > 0;
}

void Pattern::add(const std::string& rel, Tuple t) {
    if (!language.has(rel)) throw SublanguageError("symbol not in language: " + rel);
    if (static_cast<int>(t.size()) != language.arity(rel))
        throw std::invalid_argument("tuple length does not match arity of " + rel);
    for (const auto& e : t)
        if (!in_universe(e)) throw DomainError("tuple entry outside universe");
    relations[rel].insert(std::move(t));
}

void Pattern::validate() const {
    for (const auto& [rel, tuples] : relations) {
        int ar = language.arity(rel);
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != ar)
                throw std::invalid_argument("tuple length does not match arity of " + rel);
            for (const auto& e : t)
                if (!in_universe(e)) throw DomainError("tuple entry outside universe");
        }
    }
}

Pattern make_pattern(const GroupModel& g, const Language& lang,
                     std::vector<Element> universe) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    Pattern p;
    p.group = g;
    p.language = lang;
    p.universe = std::move(universe);
    return p;
}

Pattern translate(const Element& gamma, const Pattern& a) {
    Pattern out;
    out.group = a.group;
    out.language = a.language;
    out.universe.reserve(a.universe.size());
    for (const auto& x : a.universe) out.universe.push_back(a.group.mul(gamma, x));
    std::sort(out.universe.begin(), out.universe.end());
    for (const auto& [rel, tuples] : a.relations) {
        auto& dst = out.relations[rel];
        for (const auto& t : tuples) {
            Tuple tt;
            tt.reserve(t.size());
            for (const auto& x : t) tt.push_back(a.group.mul(gamma, x));
            dst.insert(std::move(tt));
        }
    }
    return out;
}

Pattern reduct(const Pattern& a, const Language& sub) {
    if (!sub.sublanguage_of(a.language))
        throw SublanguageError("reduct target is not a sublanguage");
    Pattern out;
    out.group = a.group;
    out.language = sub;
    out.universe = a.universe;
    for (const auto& s : sub.symbols()) {
        auto it = a.relations.find(s.name);
        if (it != a.relations.end() && !it->second.empty()) out.relations[s.name] = it->second;
    }
    return out;
}

Pattern restrict_to(const Pattern& a, const std::vector<Element>& s) {
    std::vector<Element> sub = s;
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    for (const auto& e : sub)
        if (!a.in_universe(e)) throw DomainError("restriction set outside universe");
    Pattern out;
    out.group = a.group;
    out.language = a.language;
    out.universe = sub;
    for (const auto& [rel, tuples] : a.relations) {
        std::set<Tuple> kept;
        for (const auto& t : tuples) {
            bool inside = std::all_of(t.begin(), t.end(), [&](const Element& e) {
                return std::binary_search(sub.begin(), sub.end(), e);
            });
            if (inside) kept.insert(t);
        }
        if (!kept.empty()) out.relations[rel] = std::move(kept);
    }
    return out;
}

bool is_expansion(const Pattern& astar, const Pattern& a) {
    if (!a.language.sublanguage_of(astar.language)) return false;
    return reduct(astar, a.language) == a;
}

bool occurs_at(const Pattern& a0, const Pattern& a, const Element& gamma) {
    Pattern shifted = translate(gamma, a0);
    for (const auto& e : shifted.universe)
        if (!a.in_universe(e)) return false;
    Pattern local = restrict_to(reduct(a, a0.language), shifted.universe);
    return local == shifted;
}

std::set<std::pair<int, int>> equality_type(const Tuple& t) {
    std::set<std::pair<int, int>> out;
    for (int i = 0; i < static_cast<int>(t.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(t.size()); ++j)
            if (t[i] == t[j]) out.emplace(i, j);
    return out;
}

json element_to_json(const GroupModel& g, const Element& e) {
    switch (g.kind()) {
        case GroupKind::Z: return e.coords[0];
        case GroupKind::ZPowD: return json(e.coords);
        case GroupKind::Free: return g.to_string(e);
    }
    return nullptr;
}

Element element_from_json(const GroupModel& g, const json& j) {
    Element e;
    switch (g.kind()) {
        case GroupKind::Z:
            e.coords.push_back(j.get<std::int64_t>());
            return e;
        case GroupKind::ZPowD:
            e.coords = j.get<std::vector<std::int64_t>>();
            if (static_cast<int>(e.coords.size()) != g.rank())
                throw ModelMismatchError("coordinate vector has wrong dimension");
            return e;
        case GroupKind::Free:
            return g.parse_element(j.get<std::string>());
    }
    return e;
}

json pattern_to_json(const Pattern& p) {
    json j;
    j["group"] = p.group.name();
    j["language"] = json::array();
    for (const auto& s : p.language.symbols())
        j["language"].push_back({{"name", s.name}, {"arity", s.arity}});
    j["universe"] = json::array();
    for (const auto& e : p.universe) j["universe"].push_back(element_to_json(p.group, e));
    j["relations"] = json::object();
    for (const auto& [rel, tuples] : p.relations) {
        json arr = json::array();
        for (const auto& t : tuples) {
            json tj = json::array();
            for (const auto& e : t) tj.push_back(element_to_json(p.group, e));
            arr.push_back(tj);
        }
        j["relations"][rel] = arr;
    }
    return j;
}

Pattern pattern_from_json(const json& j) {
    GroupModel g = GroupModel::parse(j.at("group").get<std::string>());
    std::vector<RelationSymbol> syms;
    for (const auto& s : j.at("language"))
        syms.push_back({s.at("name").get<std::string>(), s.at("arity").get<int>()});
    std::vector<Element> universe;
    for (const auto& e : j.at("universe")) universe.push_back(element_from_json(g, e));
    Pattern p = make_pattern(g, Language(std::move(syms)), std::move(universe));
    for (const auto& [rel, arr] : j.at("relations").items()) {
        for (const auto& tj : arr) {
            Tuple t;
            for (const auto& e : tj) t.push_back(element_from_json(g, e));
            p.add(rel, std::move(t));
        }
    }
    return p;
}

std::string canonical_code(const Pattern& p) {
    return pattern_to_json(p).dump();
}

std::string canonical_hash(const Pattern& p) {
    std::string s = canonical_code(p);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace cberlab
