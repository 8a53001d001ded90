#include "cberlab/local_rule.hpp"

#include <algorithm>

namespace cberlab {

using nlohmann::json;

LocalRule LocalRule::from_table(int radius, Language lang, std::string name,
                                std::map<std::string, Decoration> table,
                                Decoration fallback) {
    LocalRule r;
    r.radius = radius;
    r.base_language = lang;
    r.name = std::move(name);
    r.body = [table = std::move(table), fallback = std::move(fallback)](const Pattern& p) {
        auto it = table.find(canonical_hash(p));
        return it == table.end() ? fallback : it->second;
    };
    return r;
}

json table_rule_to_json(const LocalRule& rule,
                        const std::map<std::string, Decoration>& table,
                        const Decoration& fallback) {
    json j;
    j["name"] = rule.name;
    j["radius"] = rule.radius;
    j["fallback"] = fallback;
    j["table"] = json::object();
    for (const auto& [h, d] : table) j["table"][h] = d;
    return j;
}

DecoratedWindow apply_rule(const LocalRule& rule, const Pattern& a) {
    DecoratedWindow out;
    out.base = a;
    const auto ball = a.group.ball(rule.radius);
    for (const auto& x : a.universe) {
        std::vector<Element> coset;
        coset.reserve(ball.size());
        bool determined = true;
        for (const auto& b : ball) {
            Element y = a.group.mul(x, b);
            if (!a.in_universe(y)) {
                determined = false;
                break;
            }
            coset.push_back(y);
        }
        if (!determined) continue;
        Pattern local = translate(a.group.inv(x), restrict_to(a, coset));
        out.interior.push_back(x);
        out.decorations[x] = rule.body(local);
    }
    return out;
}

EquivarianceReport check_equivariance(const LocalRule& rule,
                                      const std::vector<std::pair<Pattern, Element>>& samples) {
    EquivarianceReport rep;
    for (size_t i = 0; i < samples.size(); ++i) {
        const auto& [a, gamma] = samples[i];
        DecoratedWindow base = apply_rule(rule, a);
        DecoratedWindow shifted = apply_rule(rule, translate(gamma, a));
        ++rep.samples_checked;
        for (const auto& x : base.interior) {
            Element gx = a.group.mul(gamma, x);
            auto it = shifted.decorations.find(gx);
            if (it == shifted.decorations.end()) continue;
            ++rep.points_checked;
            if (it->second != base.decorations.at(x)) {
                rep.violations.push_back({static_cast<int>(i), gamma, x, it->second,
                                          base.decorations.at(x)});
            }
        }
    }
    return rep;
}

Pattern structure_to_map(const Pattern& a, const Element& x, int radius) {
    const auto ball = a.group.ball(radius);
    for (const auto& g : ball) {
        if (!a.in_universe(a.group.mul(a.group.inv(g), x)))
            throw DomainError("structure_to_map: point too close to the boundary");
    }
    Pattern out = make_pattern(a.group, a.language, ball);
    for (const auto& s : a.language.symbols()) {
        auto it = a.relations.find(s.name);
        if (it == a.relations.end()) continue;
        // Enumerate tuples over the ball by transporting each tuple of A back.
        for (const auto& t : it->second) {
            Tuple g(t.size());
            bool inside = true;
            for (size_t i = 0; i < t.size(); ++i) {
                // t_i = g_i^-1 x  =>  g_i = x t_i^-1
                g[i] = a.group.mul(x, a.group.inv(t[i]));
                if (!std::binary_search(ball.begin(), ball.end(), g[i])) {
                    inside = false;
                    break;
                }
            }
            if (inside) out.add(s.name, std::move(g));
        }
    }
    return out;
}

}  // namespace cberlab
