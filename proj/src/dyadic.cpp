#include "cberlab/dyadic.hpp"

#include <algorithm>

namespace cberlab {

namespace {

int tail_bit(DyadicTail t) { return t == DyadicTail::Ones ? 1 : 0; }

// Coordinate i, or -1 when it falls inside an abstract tail.
int coord(const DyadicPoint& x, std::size_t i) {
    if (i < x.prefix.size()) return x.prefix[i];
    if (x.tail == DyadicTail::Symbolic) return -1;
    return tail_bit(x.tail);
}

// Align two points for coordinatewise comparison.  Concrete tails extend
// freely; abstract tails only line up when the prefixes end at the same
// coordinate (then both tails are the same t).
std::size_t aligned_length(const DyadicPoint& x, const DyadicPoint& y) {
    const bool xs = x.tail == DyadicTail::Symbolic;
    const bool ys = y.tail == DyadicTail::Symbolic;
    if (xs != ys)
        throw UndeterminedTailError("cannot compare an abstract tail with a concrete one");
    if (xs && x.prefix.size() != y.prefix.size())
        throw UndeterminedTailError("abstract tails are not aligned");
    return std::max(x.prefix.size(), y.prefix.size());
}

}  // namespace

DyadicPoint canonical(DyadicPoint x) {
    if (x.tail != DyadicTail::Symbolic) {
        const int b = tail_bit(x.tail);
        while (!x.prefix.empty() && x.prefix.back() == b) x.prefix.pop_back();
    }
    return x;
}

std::string to_string(const DyadicPoint& x) {
    std::string s;
    for (int b : x.prefix) s += static_cast<char>('0' + b);
    s += '|';
    s += x.tail == DyadicTail::Zeros ? '0' : x.tail == DyadicTail::Ones ? '1' : 't';
    return s;
}

DyadicPoint parse_dyadic(const std::string& s) {
    auto bar = s.find('|');
    if (bar == std::string::npos || bar + 2 != s.size())
        throw std::invalid_argument("dyadic point must look like '0110|0'");
    DyadicPoint x;
    for (std::size_t i = 0; i < bar; ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("prefix bits must be 0/1");
        x.prefix.push_back(s[i] - '0');
    }
    switch (s.back()) {
        case '0': x.tail = DyadicTail::Zeros; break;
        case '1': x.tail = DyadicTail::Ones; break;
        case 't': x.tail = DyadicTail::Symbolic; break;
        default: throw std::invalid_argument("tail tag must be 0, 1 or t");
    }
    return canonical(x);
}

bool f0_equivalent(const DyadicPoint& x, const DyadicPoint& y) {
    if (x.tail != DyadicTail::Symbolic && y.tail != DyadicTail::Symbolic &&
        x.tail != y.tail)
        return false;  // infinitely many differences
    const std::size_t len = aligned_length(x, y);
    int diffs = 0;
    for (std::size_t i = 0; i < len; ++i)
        if (coord(x, i) != coord(y, i)) ++diffs;
    return diffs % 2 == 0;
}

Cmp l_compare(const DyadicPoint& x, const DyadicPoint& y) {
    if (!f0_equivalent(x, y))
        throw std::domain_error("l_compare needs F0-equivalent points");
    const std::size_t len = aligned_length(x, y);
    std::size_t n = len;
    for (std::size_t i = len; i-- > 0;)
        if (coord(x, i) != coord(y, i)) {
            n = i;
            break;
        }
    if (n == len) return Cmp::EQ;
    int sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int b = coord(x, i);
        if (b < 0)
            throw UndeterminedTailError("parity depends on an abstract tail coordinate");
        sum += b;
    }
    return sum % 2 == 0 ? Cmp::LT : Cmp::GT;
}

DyadicPoint dyadic_successor(const DyadicPoint& x) {
    const int head = coord(x, 0);
    if (head < 0) throw UndeterminedTailError("successor case split needs coordinate 0");
    DyadicPoint out;
    out.tail = x.tail;
    if (head == 0) {
        // f(0 i rest) = 1 (1-i) rest
        const int i = coord(x, 1);
        if (i < 0) throw UndeterminedTailError("successor needs coordinate 1");
        out.prefix = {1, 1 - i};
        for (std::size_t k = 2; k < x.prefix.size(); ++k) out.prefix.push_back(x.prefix[k]);
        return canonical(out);
    }
    // head == 1: find the first later 1, giving x = 1 0^n 1 i rest
    std::size_t one = 0;
    bool found = false;
    for (std::size_t k = 1; k < x.prefix.size() && !found; ++k)
        if (x.prefix[k] == 1) {
            one = k;
            found = true;
        }
    if (!found) {
        if (x.tail == DyadicTail::Zeros)
            throw ExcludedPointError("1 0^inf has no successor");
        if (x.tail == DyadicTail::Symbolic)
            throw UndeterminedTailError("run of zeros extends into an abstract tail");
        one = std::max<std::size_t>(x.prefix.size(), 1);  // tail of ones starts here
    }
    const std::size_t n = one - 1;
    const int i = coord(x, one + 1);
    if (i < 0) throw UndeterminedTailError("successor needs the coordinate after 1 0^n 1");
    // f(1 0^n 1 i rest) = 0^{n+1} 1 (1-i) rest
    out.prefix.assign(n + 1, 0);
    out.prefix.push_back(1);
    out.prefix.push_back(1 - i);
    for (std::size_t k = one + 2; k < x.prefix.size(); ++k) out.prefix.push_back(x.prefix[k]);
    return canonical(out);
}

DyadicPoint flip_head(const DyadicPoint& x) {
    DyadicPoint out = x;
    if (out.prefix.empty()) {
        if (out.tail == DyadicTail::Symbolic)
            throw UndeterminedTailError("coordinate 0 lies in an abstract tail");
        out.prefix.push_back(tail_bit(out.tail));
    }
    out.prefix[0] = 1 - out.prefix[0];
    return canonical(out);
}

}  // namespace cberlab
