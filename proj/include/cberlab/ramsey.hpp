#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cberlab/rng.hpp"
#include "cberlab/simplex.hpp"

namespace cberlab {

// Total 2-colouring (R/S) of the pairs of {0,...,n-1}.
struct PairColouring {
    int n = 0;
    std::vector<std::uint8_t> colour;  // 1 = R, 0 = S, indexed by pair_index

    explicit PairColouring(int n_ = 0)
        : n(n_), colour(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
    }

    int pair_index(int i, int j) const {
        if (i == j || i < 0 || j < 0 || i >= n || j >= n)
            throw std::out_of_range("pair outside vertex set");
        if (i > j) std::swap(i, j);
        // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    }
    bool is_r(int i, int j) const { return colour[pair_index(i, j)] != 0; }
    void set(int i, int j, bool r) { colour[pair_index(i, j)] = r ? 1 : 0; }
};

// iid colouring: each pair is R with probability p, decided by exact
// threshold comparison on 64 uniform bits.
PairColouring sample_pair_colouring(int n, const Rational& p, std::uint64_t seed);

struct CliqueSizeError : std::length_error {
    using std::length_error::length_error;
};

// Exact size of the largest subset whose pairs all share one colour.
// Branch and bound with a greedy-colouring bound; guarded at n <= 80.
int max_homogeneous(const PairColouring& c);

}  // namespace cberlab
