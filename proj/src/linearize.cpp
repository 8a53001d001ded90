#include "cberlab/linearize.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace cberlab {

std::set<std::pair<Element, Element>> transitive_closure(const Pattern& p,
                                                         const std::string& rel) {
    std::map<Element, std::vector<Element>> succ;
    if (auto it = p.relations.find(rel); it != p.relations.end()) {
        for (const auto& t : it->second) {
            if (t.size() == 2 && t[0] != t[1]) succ[t[0]].push_back(t[1]);
        }
    }
    std::set<std::pair<Element, Element>> closed;
    for (const auto& x : p.universe) {
        std::deque<Element> queue{x};
        std::set<Element> seen{x};
        while (!queue.empty()) {
            Element cur = queue.front();
            queue.pop_front();
            for (const auto& nxt : succ[cur]) {
                if (seen.insert(nxt).second) {
                    closed.emplace(x, nxt);
                    queue.push_back(nxt);
                }
            }
        }
    }
    for (const auto& [a, b] : closed)
        if (closed.count({b, a}))
            throw InputConsistencyError("relation is not a strict partial order (cycle through " +
                                        p.group.to_string(a) + ")");
    return closed;
}

MergeResult merge_linearizations(const Pattern& p, const std::vector<OrderPiece>& pieces,
                                 const std::string& rel) {
    auto po = transitive_closure(p, rel);
    auto before = [&](const Element& a, const Element& b) { return po.count({a, b}) > 0; };

    // Every piece must linearize P on its own set.
    for (const auto& piece : pieces) {
        for (std::size_t i = 0; i < piece.order.size(); ++i)
            for (std::size_t j = i + 1; j < piece.order.size(); ++j)
                if (before(piece.order[j], piece.order[i]))
                    throw InputConsistencyError(
                        "piece order violates the partial order on pair (" +
                        p.group.to_string(piece.order[j]) + ", " +
                        p.group.to_string(piece.order[i]) + ")");
    }
    {
        std::set<Element> covered;
        for (const auto& piece : pieces) covered.insert(piece.order.begin(), piece.order.end());
        for (const auto& x : p.universe)
            if (!covered.count(x))
                throw InputConsistencyError("pieces do not cover the universe");
    }

    MergeResult res;
    std::vector<Element> cur;  // the order on Z_n, ascending
    for (const auto& piece : pieces) {
        std::set<Element> placed(cur.begin(), cur.end());
        std::vector<Element> fresh;
        for (const auto& x : piece.order)
            if (!placed.count(x)) fresh.push_back(x);  // keeps the piece's order

        // Cut position of x: one past the last placed z with z P x.
        auto cut_of = [&](const Element& x) {
            std::size_t cut = 0;
            for (std::size_t i = 0; i < cur.size(); ++i)
                if (before(cur[i], x)) cut = i + 1;
            return cut;
        };
        std::vector<std::vector<Element>> at_cut(cur.size() + 1);
        for (const auto& x : fresh) at_cut[cut_of(x)].push_back(x);

        std::vector<Element> merged;
        for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
            for (const auto& x : at_cut[pos]) merged.push_back(x);
            if (pos < cur.size()) merged.push_back(cur[pos]);
        }
        cur = std::move(merged);
        res.stages.push_back(cur);
    }
    res.order = cur;

    // The construction guarantees extension of P; verify as a hard invariant.
    std::map<Element, std::size_t> pos;
    for (std::size_t i = 0; i < res.order.size(); ++i) pos[res.order[i]] = i;
    for (const auto& [a, b] : po)
        if (pos.count(a) && pos.count(b) && pos[a] >= pos[b])
            throw std::logic_error("merged order failed to extend the partial order");
    return res;
}

TreeOrderResult tree_linearization(const Pattern& t, const std::string& rel) {
    std::map<Element, std::vector<std::pair<Element, int>>> adj;  // (neighbour, weight)
    for (const auto& v : t.universe) adj[v];
    if (auto it = t.relations.find(rel); it != t.relations.end()) {
        for (const auto& e : it->second) {
            if (e.size() != 2) continue;
            if (e[0] == e[1]) throw NotATreeError("self-loop in tree relation");
            adj[e[0]].emplace_back(e[1], +1);
            adj[e[1]].emplace_back(e[0], -1);
        }
    }

    TreeOrderResult res;
    std::set<Element> seen;
    for (const auto& root : t.universe) {
        if (seen.count(root)) continue;
        // BFS computing signed depth; a revisit with any parent other than the
        // BFS parent is an undirected cycle.
        std::vector<Element> comp;
        std::map<Element, Element> parent;
        std::deque<Element> queue{root};
        seen.insert(root);
        res.depth[root] = 0;
        while (!queue.empty()) {
            Element cur = queue.front();
            queue.pop_front();
            comp.push_back(cur);
            for (const auto& [nxt, w] : adj[cur]) {
                if (!seen.count(nxt)) {
                    seen.insert(nxt);
                    parent.emplace(nxt, cur);
                    res.depth[nxt] = res.depth[cur] + w;
                    queue.push_back(nxt);
                } else if (!(parent.count(cur) && parent.at(cur) == nxt)) {
                    throw NotATreeError("cycle detected in tree relation");
                }
            }
        }
        std::sort(comp.begin(), comp.end(), [&](const Element& a, const Element& b) {
            auto da = res.depth.at(a), db = res.depth.at(b);
            if (da != db) return da < db;
            return a < b;  // global element order as tie-break
        });
        res.components.push_back(std::move(comp));
    }
    return res;
}

}  // namespace cberlab
