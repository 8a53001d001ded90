#ifndef CBERLAB_COLOURING_HPP
#define CBERLAB_COLOURING_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cberlab/pattern.hpp"

namespace cberlab {

/// Witness level of a vertex: the least radius k at which its pulled-back
/// k-ball pattern differs from every neighbour's, together with the
/// canonical code of that pattern. Levels are ordered lexicographically by
/// (k, code); vertices on the same level are never adjacent.
struct WitnessLevel {
    int radius = 0;
    std::string code;
    auto operator<=>(const WitnessLevel&) const = default;
};

struct ColouringState {
    std::map<Element, WitnessLevel> witness;  // determined witnesses
    std::map<Element, int> colour;            // coloured vertices
    std::vector<Element> uncoloured;          // window minus coloured, sorted
};

/// Greedy equivariant (d+1)-colouring of a bounded-degree graph pattern.
/// The graph lives in relation `edge_rel` (stored symmetrically); any other
/// relations of the pattern (vertex marks etc.) take part in the witness
/// patterns. Vertices without an in-window witness are reported uncoloured,
/// never fabricated.
ColouringState equivariant_colouring(const Pattern& g, int d,
                                     const std::string& edge_rel = "E");

/// Independent properness check: no edge joins equal colours.
bool properly_coloured(const Pattern& g, const std::map<Element, int>& colour,
                       const std::string& edge_rel = "E");

}  // namespace cberlab

#endif
