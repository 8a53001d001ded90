#include "cberlab/colouring.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cberlab {

namespace {

struct VertexInfo {
    std::vector<Element> neighbours;
    int max_radius = -1;        // largest k with x*B(k) inside the window
    std::vector<std::string> code;  // code[k] = canonical ball code at radius k
    std::optional<WitnessLevel> witness;
    bool witness_exhausted = false;  // no witness found within the window
};

}  // namespace

ColouringState equivariant_colouring(const Pattern& g, int d,
                                     const std::string& edge_rel) {
    const GroupModel& grp = g.group;
    std::map<Element, VertexInfo> info;
    for (const auto& v : g.universe) info[v] = {};

    if (auto it = g.relations.find(edge_rel); it != g.relations.end()) {
        for (const auto& t : it->second) {
            if (t.size() != 2 || t[0] == t[1]) continue;
            info[t[0]].neighbours.push_back(t[1]);
            info[t[1]].neighbours.push_back(t[0]);
        }
    }
    for (auto& [v, vi] : info) {
        auto& nb = vi.neighbours;
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        if (static_cast<int>(nb.size()) > d)
            throw std::invalid_argument("vertex degree exceeds d");
    }

    // Ball codes per radius, while the ball stays inside the window.
    auto code_at = [&](const Element& v, int k) -> const std::string& {
        return info.at(v).code.at(k);
    };
    int max_k = 0;
    {
        // Window slack bound: the largest ball radius that can possibly fit.
        std::int64_t max_len = 0;
        for (const auto& v : g.universe) max_len = std::max(max_len, v.length());
        max_k = static_cast<int>(2 * max_len + 2);
    }
    for (auto& [v, vi] : info) {
        Element v_inv = grp.inv(v);
        for (int k = 0; k <= max_k; ++k) {
            std::vector<Element> coset;
            bool inside = true;
            for (const auto& b : grp.ball(k)) {
                Element y = grp.mul(v, b);
                if (!g.in_universe(y)) {
                    inside = false;
                    break;
                }
                coset.push_back(y);
            }
            if (!inside) break;
            vi.max_radius = k;
            vi.code.push_back(canonical_code(translate(v_inv, restrict_to(g, coset))));
        }
    }

    // Witness search: least k such that all neighbour k-balls are determined
    // and differ from v's. Neighbours of v lie in v*B(1), so their k-balls
    // are determined whenever v's (k+1)-ball is.
    for (auto& [v, vi] : info) {
        for (int k = 0; k + 1 <= vi.max_radius; ++k) {
            bool distinct = true;
            for (const auto& w : vi.neighbours) {
                if (code_at(w, k) == vi.code[k]) {
                    distinct = false;
                    break;
                }
            }
            if (distinct) {
                vi.witness = WitnessLevel{k, vi.code[k]};
                break;
            }
        }
        if (!vi.witness && vi.max_radius >= 0) {
            // Searched every radius the window supports without success.
            vi.witness_exhausted = true;
        }
    }

    // Recursive greedy colouring in witness-level order. A vertex is
    // colourable only when each neighbour's level is provably on the correct
    // side and earlier neighbours are themselves colourable.
    std::map<Element, std::optional<int>> colour_memo;
    std::function<std::optional<int>(const Element&)> colour_of =
        [&](const Element& v) -> std::optional<int> {
        if (auto it = colour_memo.find(v); it != colour_memo.end()) return it->second;
        const VertexInfo& vi = info.at(v);
        if (!vi.witness) {
            colour_memo[v] = std::nullopt;
            return std::nullopt;
        }
        const WitnessLevel& lv = *vi.witness;
        std::set<int> used;
        bool ok = true;
        for (const auto& w : vi.neighbours) {
            const VertexInfo& wi = info.at(w);
            if (wi.witness) {
                if (*wi.witness < lv) {
                    auto cw = colour_of(w);
                    if (!cw) { ok = false; break; }
                    used.insert(*cw);
                }
                continue;  // later level: greedy ignores it
            }
            // No witness for w inside the window. If w's search covered all
            // radii up to lv.radius, its true level is later than v's and the
            // greedy may ignore it; otherwise v's colour is undetermined.
            if (wi.max_radius - 1 < lv.radius) { ok = false; break; }
        }
        std::optional<int> result;
        if (ok) {
            for (int c = 0; c <= d; ++c) {
                if (!used.count(c)) {
                    result = c;
                    break;
                }
            }
        }
        colour_memo[v] = result;
        return result;
    };

    ColouringState st;
    for (const auto& [v, vi] : info)
        if (vi.witness) st.witness[v] = *vi.witness;
    for (const auto& v : g.universe) {
        auto c = colour_of(v);
        if (c)
            st.colour[v] = *c;
        else
            st.uncoloured.push_back(v);
    }
    return st;
}

bool properly_coloured(const Pattern& g, const std::map<Element, int>& colour,
                       const std::string& edge_rel) {
    auto it = g.relations.find(edge_rel);
    if (it == g.relations.end()) return true;
    for (const auto& t : it->second) {
        if (t.size() != 2 || t[0] == t[1]) continue;
        auto a = colour.find(t[0]), b = colour.find(t[1]);
        if (a != colour.end() && b != colour.end() && a->second == b->second) return false;
    }
    return true;
}

}  // namespace cberlab
