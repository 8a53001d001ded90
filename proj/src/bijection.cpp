#include "cberlab/bijection.hpp"

#include <algorithm>
#include <set>

#include "cberlab/pattern.hpp"

namespace cberlab {

std::vector<Element> BijectionTrace::domain() const {
    std::vector<Element> out;
    out.reserve(phi.size());
    for (const auto& [k, v] : phi) out.push_back(k);
    return out;
}

std::vector<Element> BijectionTrace::range() const {
    std::vector<Element> out;
    out.reserve(phi.size());
    for (const auto& [k, v] : phi) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

bool BijectionTrace::interior_dichotomy(const std::vector<Element>& a,
                                        const std::vector<Element>& b) const {
    auto in = [](const std::vector<Element>& s, const Element& e) {
        return std::binary_search(s.begin(), s.end(), e);
    };
    auto ran = range();
    bool dom_ok = true, ran_ok = true;
    for (const auto& x : interior) {
        if (in(a, x) && !phi.count(x)) dom_ok = false;
        if (in(b, x) && !in(ran, x)) ran_ok = false;
    }
    return dom_ok || ran_ok;
}

int bijection_padding(const GroupModel& g, int stages) {
    int pad = 0;
    for (const auto& e : g.enumerate(stages))
        pad = std::max<int>(pad, static_cast<int>(e.length()));
    return pad;
}

BijectionTrace greedy_bijection(const GroupModel& g, const std::vector<Element>& a,
                                const std::vector<Element>& b, const Window& w,
                                int stages) {
    if (stages < 0) stages = static_cast<int>(w.elements.size());
    BijectionTrace tr;
    tr.group = g;
    tr.enumeration = g.enumerate(stages);
    tr.interior = g.ball(w.radius);
    if (bijection_padding(g, stages) > w.padding)
        throw TruncationError("window padding insufficient for stage cap " +
                              std::to_string(stages));

    std::set<Element> rem_a(a.begin(), a.end());  // A minus earlier stages
    std::set<Element> rem_b(b.begin(), b.end());  // B minus earlier X_m gamma_m
    for (const auto& x : rem_a)
        if (!w.contains(x)) throw DomainError("A not contained in the window");
    for (const auto& x : rem_b)
        if (!w.contains(x)) throw DomainError("B not contained in the window");

    for (int n = 0; n < stages; ++n) {
        const Element& gn = tr.enumeration[n];
        std::vector<Element> xn;
        for (const auto& x : rem_a) {
            if (rem_b.count(g.mul(x, gn))) xn.push_back(x);
        }
        for (const auto& x : xn) {
            rem_a.erase(x);
            rem_b.erase(g.mul(x, gn));
            tr.phi[x] = g.mul(x, gn);
        }
        tr.stages.push_back(std::move(xn));
    }
    return tr;
}

}  // namespace cberlab
