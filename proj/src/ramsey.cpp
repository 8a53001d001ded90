#include "cberlab/ramsey.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace cberlab {

namespace {

using u128 = unsigned __int128;

int ctz128(u128 v) {
    auto lo = static_cast<std::uint64_t>(v);
    if (lo) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
}

// Tomita-style max clique: vertices of the candidate set are greedily
// colour-classed; a branch is cut when depth + colour bound <= best.
struct CliqueSearch {
    const std::vector<u128>& adj;
    int best = 0;

    void expand(int depth, u128 cand) {
        if (cand == 0) {
            best = std::max(best, depth);
            return;
        }
        std::vector<int> order;
        std::vector<int> bound;
        u128 left = cand;
        int colours = 0;
        while (left != 0) {
            ++colours;
            u128 cls = left;
            while (cls != 0) {
                int v = ctz128(cls);
                cls &= ~adj[v];
                cls &= ~(u128(1) << v);
                left &= ~(u128(1) << v);
                order.push_back(v);
                bound.push_back(colours);
            }
        }
        for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
            if (depth + bound[k] <= best) return;
            int v = order[k];
            cand &= ~(u128(1) << v);
            expand(depth + 1, (cand | (u128(1) << v)) & adj[v]);
        }
    }
};

int max_clique(const std::vector<u128>& adj, int n) {
    CliqueSearch s{adj};
    u128 all = n == 128 ? ~u128(0) : (u128(1) << n) - 1;
    s.expand(0, all);
    return s.best;
}

}  // namespace

PairColouring sample_pair_colouring(int n, const Rational& p, std::uint64_t seed) {
    if (p.sign() <= 0 || p >= 1) throw std::invalid_argument("p must lie strictly in (0,1)");
    using boost::multiprecision::cpp_int;
    const cpp_int threshold =
        (cpp_int(numerator(p)) << 64) / cpp_int(denominator(p));
    PairColouring c(n);
    CounterRng rng(seed, 0x9aa2);
    for (auto& bit : c.colour) bit = cpp_int(rng.next()) < threshold ? 1 : 0;
    return c;
}

int max_homogeneous(const PairColouring& c) {
    if (c.n > 80) throw CliqueSizeError("max_homogeneous guarded at n <= 80");
    if (c.n <= 1) return c.n;
    std::vector<u128> r_adj(c.n, 0), s_adj(c.n, 0);
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j) {
            if (c.is_r(i, j)) {
                r_adj[i] |= u128(1) << j;
                r_adj[j] |= u128(1) << i;
            } else {
                s_adj[i] |= u128(1) << j;
                s_adj[j] |= u128(1) << i;
            }
        }
    return std::max(max_clique(r_adj, c.n), max_clique(s_adj, c.n));
}

}  // namespace cberlab
