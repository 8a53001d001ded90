#ifndef CBERLAB_FOREST_HPP
#define CBERLAB_FOREST_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace cberlab {

/// Union-find with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

using EdgeId = std::pair<int, int>;  // vertex indices, first < second

/// Increasing exhaustion E_0 <= E_1 <= ... of the vertex set: stage t maps
/// each vertex to its class id; stage t+1 must coarsen stage t.
using Exhaustion = std::vector<std::vector<int>>;

struct ForestResult {
    std::vector<std::vector<EdgeId>> stages;  // T_0 <= T_1 <= ... (sorted)
    std::vector<EdgeId> edges;                // final stage
    /// Classes of the final stage whose induced graph is disconnected.
    std::vector<int> failed_classes;
    bool ok() const { return failed_classes.empty(); }
};

/// Hyperfinite-exhaustion spanning forest: stage t extends the previous
/// forest to a spanning forest of each E_t-class, scanning edges in the given
/// order. The final stage is a spanning tree of every final class whose
/// induced graph is connected; disconnected classes are reported.
ForestResult spanning_forest(int n_vertices, const std::vector<EdgeId>& edges,
                             const Exhaustion& exhaustion);

}  // namespace cberlab

#endif
