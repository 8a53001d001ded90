#include "cberlab/forest.hpp"

#include <algorithm>
#include <stdexcept>

namespace cberlab {

ForestResult spanning_forest(int n_vertices, const std::vector<EdgeId>& edges,
                             const Exhaustion& exhaustion) {
    for (const auto& stage : exhaustion)
        if (static_cast<int>(stage.size()) != n_vertices)
            throw std::invalid_argument("exhaustion stage has wrong vertex count");
    for (std::size_t t = 1; t < exhaustion.size(); ++t) {
        // Coarsening: same class at t-1 implies same class at t.
        std::map<int, int> image;
        for (int v = 0; v < n_vertices; ++v) {
            auto [it, inserted] = image.emplace(exhaustion[t - 1][v], exhaustion[t][v]);
            if (!inserted && it->second != exhaustion[t][v])
                throw std::invalid_argument("exhaustion stage does not coarsen its predecessor");
        }
    }

    ForestResult res;
    UnionFind uf(n_vertices);
    std::vector<EdgeId> chosen;
    for (const auto& stage : exhaustion) {
        for (const auto& [u, v] : edges) {
            if (stage[u] != stage[v]) continue;  // edge crosses classes at this stage
            if (uf.unite(u, v)) chosen.push_back({u, v});
        }
        auto sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        res.stages.push_back(std::move(sorted));
    }
    res.edges = res.stages.empty() ? std::vector<EdgeId>{} : res.stages.back();

    if (!exhaustion.empty()) {
        // A final class is spanned iff it became a single component.
        const auto& last = exhaustion.back();
        std::map<int, std::size_t> root_of_class;
        std::vector<int> failed;
        for (int v = 0; v < n_vertices; ++v) {
            auto [it, inserted] = root_of_class.emplace(last[v], uf.find(v));
            if (!inserted && it->second != uf.find(v)) failed.push_back(last[v]);
        }
        std::sort(failed.begin(), failed.end());
        failed.erase(std::unique(failed.begin(), failed.end()), failed.end());
        res.failed_classes = std::move(failed);
    }
    return res;
}

}  // namespace cberlab
