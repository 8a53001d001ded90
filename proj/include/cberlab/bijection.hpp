#ifndef CBERLAB_BIJECTION_HPP
#define CBERLAB_BIJECTION_HPP

#include <map>
#include <vector>

#include "cberlab/group.hpp"

namespace cberlab {

/// Trace of the greedy stagewise bijection between two subsets of a window:
///   X_n = (A \ union_{m<n} X_m)  intersect  (B \ union_{m<n} X_m g_m) g_n^-1,
/// phi(g) = g g_n for g in X_n. The stages live on the padded window; the
/// dichotomy (dom covers A or ran covers B) is reported on the interior.
struct BijectionTrace {
    GroupModel group = GroupModel(GroupKind::Z, 1);
    std::vector<Element> enumeration;          // gamma_0 .. gamma_{N-1}
    std::vector<std::vector<Element>> stages;  // X_0 .. X_{N-1}, each sorted
    std::map<Element, Element> phi;            // g -> g * gamma_n
    std::vector<Element> interior;             // unpadded window, sorted

    std::vector<Element> domain() const;
    std::vector<Element> range() const;
    /// Interior dichotomy: dom(phi) covers A on the interior, or ran(phi)
    /// covers B on the interior.
    bool interior_dichotomy(const std::vector<Element>& a,
                            const std::vector<Element>& b) const;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs the recursion with stage cap `stages` (default: padded window size).
/// The window padding must dominate the word length of every enumerated
/// gamma_n, otherwise a TruncationError is thrown.
BijectionTrace greedy_bijection(const GroupModel& g, const std::vector<Element>& a,
                                const std::vector<Element>& b, const Window& w,
                                int stages = -1);

/// Padding sufficient for `stages` stages: max word length of gamma_n.
int bijection_padding(const GroupModel& g, int stages);

}  // namespace cberlab

#endif
