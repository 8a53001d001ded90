#ifndef CBERLAB_ZLINE_HPP
#define CBERLAB_ZLINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cberlab {

using Rational = boost::multiprecision::cpp_rational;

enum class BlockTag { Z, Dense, Fin };

/// A block of a symbolic linear order: an interval of order type Z, a dense
/// order, or a finite chunk of k points.
struct OrderBlock {
    std::string id;
    BlockTag tag = BlockTag::Fin;
    int fin_size = 0;  // only for Fin
};

/// A symbolic linear order: blocks listed in ascending order, plus an
/// assignment of concrete window elements to (block, position) slots.
/// Z-interval membership is not decidable from a raw truncation, so the
/// selector consumes this symbolic form.
struct OrderSpec {
    std::vector<OrderBlock> blocks;

    const OrderBlock* find(const std::string& id) const;
    /// Position of a block in the symbolic order (the order on intervals).
    std::optional<int> index_of(const std::string& id) const;
};

struct ZlineVerdict {
    bool in_x = false;                 // false: NOT-IN-X
    std::string selected;              // block id when in_x
    Rational max_frequency = 0;
};

/// The frequency-maximizing selector: among Z-blocks attaining the maximal
/// frequency (> 0), picks the order-least one. Orders with no Z-block or
/// zero maximal frequency are outside the classified set.
ZlineVerdict zline_select(const OrderSpec& spec,
                          const std::map<std::string, Rational>& freqs);

}  // namespace cberlab

#endif
