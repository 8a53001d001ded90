#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cberlab {

// Points of 2^N written as an explicit finite prefix followed by a tail tag:
// all zeros, all ones, or an abstract tail t shared between points.  Every
// parity or order computation reduces to the explicit prefixes; when it
// cannot (misaligned abstract tails, or a case split that needs a symbolic
// coordinate) the operation raises UndeterminedTailError rather than guess.
enum class DyadicTail { Zeros, Ones, Symbolic };

struct UndeterminedTailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExcludedPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct DyadicPoint {
    std::vector<int> prefix;  // bits, coordinate 0 first
    DyadicTail tail = DyadicTail::Zeros;

    bool operator==(const DyadicPoint&) const = default;
};

// Drop prefix bits that merely repeat a concrete tail.
DyadicPoint canonical(DyadicPoint x);

std::string to_string(const DyadicPoint& x);
DyadicPoint parse_dyadic(const std::string& s);  // e.g. "0110|0", "01|t"

// F0: finitely many differing coordinates, evenly many.
bool f0_equivalent(const DyadicPoint& x, const DyadicPoint& y);

enum class Cmp { LT, EQ, GT };

// Order within an F0 class: x < y iff the sum of x below the last differing
// coordinate is even.
Cmp l_compare(const DyadicPoint& x, const DyadicPoint& y);

// Immediate L-successor f; the point 1 0^inf is outside its domain.
DyadicPoint dyadic_successor(const DyadicPoint& x);

// g: flip coordinate 0.  Involution, order-reversing across the class pair.
DyadicPoint flip_head(const DyadicPoint& x);

}  // namespace cberlab
