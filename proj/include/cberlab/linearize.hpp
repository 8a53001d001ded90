#ifndef CBERLAB_LINEARIZE_HPP
#define CBERLAB_LINEARIZE_HPP

#include <string>
#include <vector>

#include "cberlab/pattern.hpp"

namespace cberlab {

struct InputConsistencyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One piece of a stagewise linearization: a subset of the universe together
/// with a linear order on it (listed ascending).
struct OrderPiece {
    std::vector<Element> order;  // ascending; the piece's set is its entries
};

struct MergeResult {
    std::vector<std::vector<Element>> stages;  // cumulative orders, ascending
    std::vector<Element> order;                // final total order
};

/// Stagewise merge of partial linearizations into a total order extending the
/// partial order P (relation `rel` of the pattern, transitively closed here).
/// New elements x of a stage enter at the cut just above
///   I_x = { y already placed : y <= some placed z with z P x },
/// ties between new elements with equal cuts resolved by the piece's order.
MergeResult merge_linearizations(const Pattern& p,
                                 const std::vector<OrderPiece>& pieces,
                                 const std::string& rel = "P");

/// Reachability-closed set of ordered pairs of the relation `rel`.
std::set<std::pair<Element, Element>> transitive_closure(const Pattern& p,
                                                         const std::string& rel);

struct NotATreeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TreeOrderResult {
    /// Per component, elements in ascending order.
    std::vector<std::vector<Element>> components;
    /// Signed path sums d(root, x) used for ordering.
    std::map<Element, std::int64_t> depth;
};

/// Linearization of a directed forest: weigh each path edge +1 along the
/// direction of T and -1 against it; x < y iff d(x,y) > 0, ties broken by
/// the global element order.
TreeOrderResult tree_linearization(const Pattern& t, const std::string& rel = "T");

}  // namespace cberlab

#endif
