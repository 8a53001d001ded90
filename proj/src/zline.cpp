#include "cberlab/zline.hpp"

#include <stdexcept>

namespace cberlab {

const OrderBlock* OrderSpec::find(const std::string& id) const {
    for (const auto& b : blocks)
        if (b.id == id) return &b;
    return nullptr;
}

std::optional<int> OrderSpec::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].id == id) return static_cast<int>(i);
    return std::nullopt;
}

ZlineVerdict zline_select(const OrderSpec& spec,
                          const std::map<std::string, Rational>& freqs) {
    ZlineVerdict v;
    Rational best = 0;
    int best_index = -1;
    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        const auto& b = spec.blocks[i];
        if (b.tag != BlockTag::Z) continue;
        auto it = freqs.find(b.id);
        if (it == freqs.end())
            throw std::invalid_argument("missing frequency for Z-block " + b.id);
        if (best_index < 0 || it->second > best) {
            best = it->second;
            best_index = static_cast<int>(i);  // order-least attains first
        }
    }
    if (best_index < 0 || best <= 0) return v;  // NOT-IN-X
    v.in_x = true;
    v.selected = spec.blocks[best_index].id;
    v.max_frequency = best;
    return v;
}

}  // namespace cberlab
