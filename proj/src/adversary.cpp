#include "cberlab/adversary.hpp"

#include <algorithm>
#include <map>

#include "cberlab/rng.hpp"

namespace cberlab {

namespace {

Element z_of(std::int64_t k) {
    Element e;
    e.coords = {k};
    return e;
}

std::int64_t z_val(const Element& e) { return e.coords.at(0); }

Language lin_language() { return Language({{"P", 2}}); }
Language ramsey_language() { return Language({{"R", 2}, {"S", 2}}); }
Language zline_language() { return Language({{"A", 1}, {"L", 2}}); }

bool sym_holds(const Pattern& p, const std::string& rel, const Element& a, const Element& b) {
    return p.holds(rel, {a, b}) || p.holds(rel, {b, a});
}

bool marked_at(const DecoratedWindow& w, const Element& x) {
    auto it = w.decorations.find(x);
    return it != w.decorations.end() && it->second.value("marked", false);
}

bool is_interior(const DecoratedWindow& w, const Element& x) {
    return std::binary_search(w.interior.begin(), w.interior.end(), x);
}

// ---- problem-specific inconsistency checkers ----

// Edge x -> y of the rule-induced order, where y = x+1 and the rule said
// "lt", or x = y+1 and the rule said "gt" at y.
bool rule_edge(const DecoratedWindow& w, const Element& x, const Element& y) {
    if (z_val(y) == z_val(x) + 1 && is_interior(w, x) && is_interior(w, y)) {
        auto it = w.decorations.find(x);
        return it != w.decorations.end() && it->second.value("next", "") == "lt";
    }
    if (z_val(x) == z_val(y) + 1 && is_interior(w, x) && is_interior(w, y)) {
        auto it = w.decorations.find(y);
        return it != w.decorations.end() && it->second.value("next", "") == "gt";
    }
    return false;
}

bool order_edge(const Pattern& p, const DecoratedWindow& w, const Element& x, const Element& y) {
    return p.holds("P", {x, y}) || rule_edge(w, x, y);
}

std::optional<DefeatWitness> check_linearization(const Pattern& p, const DecoratedWindow& w) {
    // directed graph on the universe: P-edges plus the rule's verdicts on
    // adjacent interior pairs; any directed cycle defeats the rule.
    const auto& u = p.universe;
    const int n = static_cast<int>(u.size());
    std::vector<std::vector<int>> succ(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && order_edge(p, w, u[i], u[j])) succ[i].push_back(j);
    std::vector<int> state(n, 0);
    std::vector<int> path;
    std::vector<int> cycle_found;
    auto dfs = [&](auto&& self, int v) -> bool {
        state[v] = 1;
        path.push_back(v);
        for (int nx : succ[v]) {
            if (state[nx] == 1) {
                auto it = std::find(path.begin(), path.end(), nx);
                cycle_found.assign(it, path.end());
                return true;
            }
            if (state[nx] == 0 && self(self, nx)) return true;
        }
        path.pop_back();
        state[v] = 2;
        return false;
    };
    for (int start = 0; start < n; ++start) {
        if (state[start] || !dfs(dfs, start)) continue;
        DefeatWitness dw;
        dw.found = true;
        dw.problem = AdversaryProblem::Linearization;
        dw.pattern = p;
        dw.reason = "rule output closes a directed L-cycle";
        nlohmann::json cycle = nlohmann::json::array();
        for (int c : cycle_found) {
            cycle.push_back(element_to_json(p.group, u[c]));
            dw.occurrences.push_back(u[c]);
        }
        dw.details["cycle"] = std::move(cycle);
        return dw;
    }
    return std::nullopt;
}

std::optional<DefeatWitness> check_ramsey(const Pattern& p, const DecoratedWindow& w) {
    std::vector<Element> marked;
    for (const Element& x : w.interior)
        if (marked_at(w, x)) marked.push_back(x);
    std::optional<std::pair<Element, Element>> r_pair, s_pair;
    for (std::size_t i = 0; i < marked.size(); ++i)
        for (std::size_t j = i + 1; j < marked.size(); ++j) {
            if (!r_pair && sym_holds(p, "R", marked[i], marked[j]))
                r_pair = {marked[i], marked[j]};
            if (!s_pair && sym_holds(p, "S", marked[i], marked[j]))
                s_pair = {marked[i], marked[j]};
        }
    if (!r_pair || !s_pair) return std::nullopt;
    DefeatWitness dw;
    dw.found = true;
    dw.problem = AdversaryProblem::Ramsey;
    dw.pattern = p;
    dw.reason = "marked set carries both an R-pair and an S-pair";
    dw.details["r_pair"] = {element_to_json(p.group, r_pair->first),
                            element_to_json(p.group, r_pair->second)};
    dw.details["s_pair"] = {element_to_json(p.group, s_pair->first),
                            element_to_json(p.group, s_pair->second)};
    dw.occurrences = {r_pair->first, r_pair->second, s_pair->first, s_pair->second};
    return dw;
}

std::optional<DefeatWitness> check_zline(const Pattern& p, const DecoratedWindow& w) {
    // the marked set must be L-convex on determined elements
    for (const Element& x : w.interior) {
        if (!marked_at(w, x)) continue;
        for (const Element& y : w.interior) {
            if (marked_at(w, y) || !p.holds("L", {x, y})) continue;
            for (const Element& z : w.interior) {
                if (!marked_at(w, z) || !p.holds("L", {y, z})) continue;
                DefeatWitness dw;
                dw.found = true;
                dw.problem = AdversaryProblem::Zline;
                dw.pattern = p;
                dw.reason = "unmarked element lies L-between two marked elements";
                dw.details["between"] = {element_to_json(p.group, x), element_to_json(p.group, y),
                                         element_to_json(p.group, z)};
                dw.occurrences = {x, z};
                return dw;
            }
        }
    }
    return std::nullopt;
}

// ---- gadgets ----

Pattern z_window_pattern(const Language& lang, std::int64_t lo, std::int64_t hi) {
    GroupModel g(GroupKind::Z, 1);
    std::vector<Element> univ;
    for (std::int64_t k = lo; k <= hi; ++k) univ.push_back(z_of(k));
    return make_pattern(g, lang, std::move(univ));
}

// Crossing copies: the rule sees identical balls along the line, but a P-edge
// from the right end back to the left end forces any extension into a cycle.
Pattern linearization_gadget(int r) {
    Pattern p = z_window_pattern(lin_language(), 0, 4L * r + 2);
    p.add("P", {z_of(3L * r + 1), z_of(r + 1)});
    return p;
}

// Three all-R balls in a row; the only S-pair spans the two right centres and
// is invisible from inside any single ball.
Pattern ramsey_gadget(int r) {
    Pattern p = z_window_pattern(ramsey_language(), 0, 6L * r);
    for (std::int64_t i = 0; i <= 6L * r; ++i)
        for (std::int64_t j = i + 1; j <= 6L * r; ++j) {
            const bool s = (i == 3L * r && j == 5L * r);
            p.add(s ? "S" : "R", {z_of(i), z_of(j)});
            p.add(s ? "S" : "R", {z_of(j), z_of(i)});
        }
    return p;
}

// Two copies of A0 (an isolated A-vertex) with an unmarked element L-between
// them.
Pattern zline_gadget(int r) {
    Pattern p = z_window_pattern(zline_language(), 0, 4L * r);
    p.add("A", {z_of(r)});
    p.add("A", {z_of(3L * r)});
    for (std::int64_t i = 0; i <= 4L * r; ++i)
        for (std::int64_t j = i + 1; j <= 4L * r; ++j) p.add("L", {z_of(i), z_of(j)});
    return p;
}

std::optional<DefeatWitness> try_pattern(AdversaryProblem prob, const LocalRule& rule,
                                         const Pattern& p) {
    if (!rule.base_language.sublanguage_of(p.language)) return std::nullopt;
    DecoratedWindow w = apply_rule(rule, p);
    return check_defeat(prob, p, w);
}

// Bounded seeded fallback search over small windows.
std::optional<DefeatWitness> fallback_search(AdversaryProblem prob, const LocalRule& rule) {
    const int r = rule.radius;
    const std::int64_t hi = 4L * r + 2;
    CounterRng rng(0xadfe, 0);
    const int budget = 4000;
    for (int trial = 0; trial < budget; ++trial) {
        Pattern p = [&] {
            switch (prob) {
                case AdversaryProblem::Linearization: {
                    Pattern q = z_window_pattern(lin_language(), 0, hi);
                    // a random modest set of P-edges, transitively closed,
                    // discarded when it is itself cyclic
                    std::vector<std::vector<bool>> rel(hi + 1, std::vector<bool>(hi + 1, false));
                    int edges = 1 + static_cast<int>(rng.below(3));
                    for (int e = 0; e < edges; ++e) {
                        auto a = rng.below(hi + 1), b = rng.below(hi + 1);
                        if (a != b) rel[a][b] = true;
                    }
                    for (std::int64_t k = 0; k <= hi; ++k)
                        for (std::int64_t i = 0; i <= hi; ++i)
                            for (std::int64_t j = 0; j <= hi; ++j)
                                if (rel[i][k] && rel[k][j]) rel[i][j] = true;
                    for (std::int64_t i = 0; i <= hi; ++i)
                        if (rel[i][i]) return Pattern{};  // cyclic, not a partial order
                    for (std::int64_t i = 0; i <= hi; ++i)
                        for (std::int64_t j = 0; j <= hi; ++j)
                            if (rel[i][j]) q.add("P", {z_of(i), z_of(j)});
                    return q;
                }
                case AdversaryProblem::Ramsey: {
                    Pattern q = z_window_pattern(ramsey_language(), 0, hi);
                    for (std::int64_t i = 0; i <= hi; ++i)
                        for (std::int64_t j = i + 1; j <= hi; ++j) {
                            const char* rel = rng.bernoulli(0.5) ? "R" : "S";
                            q.add(rel, {z_of(i), z_of(j)});
                            q.add(rel, {z_of(j), z_of(i)});
                        }
                    return q;
                }
                case AdversaryProblem::Zline: {
                    Pattern q = z_window_pattern(zline_language(), 0, hi);
                    for (std::int64_t i = 0; i <= hi; ++i)
                        if (rng.bernoulli(0.4)) q.add("A", {z_of(i)});
                    std::vector<std::int64_t> perm(hi + 1);
                    for (std::int64_t i = 0; i <= hi; ++i) perm[i] = i;
                    for (std::int64_t i = hi; i > 0; --i)
                        std::swap(perm[i], perm[rng.below(i + 1)]);
                    for (std::int64_t i = 0; i <= hi; ++i)
                        for (std::int64_t j = i + 1; j <= hi; ++j)
                            q.add("L", {z_of(perm[i]), z_of(perm[j])});
                    return q;
                }
            }
            return Pattern{};
        }();
        if (p.universe.empty()) continue;
        if (auto dw = try_pattern(prob, rule, p)) return dw;
    }
    return std::nullopt;
}

}  // namespace

std::optional<DefeatWitness> check_defeat(AdversaryProblem prob, const Pattern& p,
                                          const DecoratedWindow& w) {
    switch (prob) {
        case AdversaryProblem::Linearization: return check_linearization(p, w);
        case AdversaryProblem::Ramsey: return check_ramsey(p, w);
        case AdversaryProblem::Zline: return check_zline(p, w);
    }
    return std::nullopt;
}

DefeatWitness adversary(AdversaryProblem prob, const LocalRule& rule) {
    if (rule.radius > 3) throw RuleBudgetError("adversary search budget covers radius <= 3 only");
    const int r = std::max(rule.radius, 1);
    std::vector<Pattern> gadgets;
    switch (prob) {
        case AdversaryProblem::Linearization: gadgets.push_back(linearization_gadget(r)); break;
        case AdversaryProblem::Ramsey: gadgets.push_back(ramsey_gadget(r)); break;
        case AdversaryProblem::Zline: gadgets.push_back(zline_gadget(r)); break;
    }
    for (const Pattern& p : gadgets)
        if (auto dw = try_pattern(prob, rule, p)) return *dw;
    if (auto dw = fallback_search(prob, rule)) return *dw;
    DefeatWitness none;
    none.found = false;
    none.problem = prob;
    none.reason = "NO-DEFEAT-FOUND";
    return none;
}

bool replay_defeat(const LocalRule& rule, const DefeatWitness& w) {
    if (!w.found) return false;
    DecoratedWindow dec = apply_rule(rule, w.pattern);
    const Pattern& p = w.pattern;
    auto elem = [&](const nlohmann::json& j) { return element_from_json(p.group, j); };
    switch (w.problem) {
        case AdversaryProblem::Linearization: {
            const auto& cyc = w.details.at("cycle");
            if (cyc.size() < 2) return false;
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                Element a = elem(cyc[i]);
                Element b = elem(cyc[(i + 1) % cyc.size()]);
                if (!order_edge(p, dec, a, b)) return false;
            }
            return true;
        }
        case AdversaryProblem::Ramsey: {
            Element a = elem(w.details.at("r_pair")[0]), b = elem(w.details.at("r_pair")[1]);
            Element c = elem(w.details.at("s_pair")[0]), d = elem(w.details.at("s_pair")[1]);
            return marked_at(dec, a) && marked_at(dec, b) && marked_at(dec, c) &&
                   marked_at(dec, d) && sym_holds(p, "R", a, b) && sym_holds(p, "S", c, d);
        }
        case AdversaryProblem::Zline: {
            Element x = elem(w.details.at("between")[0]);
            Element y = elem(w.details.at("between")[1]);
            Element z = elem(w.details.at("between")[2]);
            return marked_at(dec, x) && !marked_at(dec, y) && is_interior(dec, y) &&
                   marked_at(dec, z) && p.holds("L", {x, y}) && p.holds("L", {y, z});
        }
    }
    return false;
}

nlohmann::json witness_to_json(const DefeatWitness& w) {
    nlohmann::json j;
    j["found"] = w.found;
    j["problem"] = w.problem == AdversaryProblem::Ramsey          ? "ramsey"
                   : w.problem == AdversaryProblem::Linearization ? "linearization"
                                                                  : "zline";
    j["pattern"] = pattern_to_json(w.pattern);
    j["reason"] = w.reason;
    j["details"] = w.details;
    nlohmann::json occ = nlohmann::json::array();
    for (const Element& e : w.occurrences) occ.push_back(element_to_json(w.pattern.group, e));
    j["occurrences"] = std::move(occ);
    return j;
}

DefeatWitness witness_from_json(const nlohmann::json& j) {
    DefeatWitness w;
    w.found = j.at("found").get<bool>();
    const std::string prob = j.at("problem").get<std::string>();
    w.problem = prob == "ramsey"          ? AdversaryProblem::Ramsey
                : prob == "linearization" ? AdversaryProblem::Linearization
                                          : AdversaryProblem::Zline;
    w.pattern = pattern_from_json(j.at("pattern"));
    w.reason = j.at("reason").get<std::string>();
    w.details = j.at("details");
    for (const auto& e : j.at("occurrences"))
        w.occurrences.push_back(element_from_json(w.pattern.group, e));
    return w;
}

LocalRule coordinate_order_rule() {
    LocalRule rule;
    rule.radius = 1;
    rule.base_language = lin_language();
    rule.name = "order-by-coordinate";
    rule.body = [](const Pattern&) { return Decoration{{"next", "lt"}}; };
    return rule;
}

LocalRule all_r_ball_rule(int radius) {
    LocalRule rule;
    rule.radius = radius;
    rule.base_language = ramsey_language();
    rule.name = "all-r-ball";
    rule.body = [](const Pattern& ball) {
        for (std::size_t i = 0; i < ball.universe.size(); ++i)
            for (std::size_t j = i + 1; j < ball.universe.size(); ++j)
                if (!sym_holds(ball, "R", ball.universe[i], ball.universe[j]))
                    return Decoration{{"marked", false}};
        return Decoration{{"marked", true}};
    };
    return rule;
}

LocalRule match_a0_rule() {
    LocalRule rule;
    rule.radius = 1;
    rule.base_language = zline_language();
    rule.name = "match-a0";
    rule.body = [](const Pattern& ball) {
        bool ok = ball.holds("A", {z_of(0)}) && !ball.holds("A", {z_of(-1)}) &&
                  !ball.holds("A", {z_of(1)});
        return Decoration{{"marked", ok}};
    };
    return rule;
}

}  // namespace cberlab
