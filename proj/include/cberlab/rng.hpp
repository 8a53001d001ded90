#ifndef CBERLAB_RNG_HPP
#define CBERLAB_RNG_HPP

#include <cstdint>

namespace cberlab {

/// "sm64ctr": a counter-based generator built from the splitmix64 finalizer.
/// Output i of stream (seed, stream) is mix(seed, stream, i); identical
/// configurations reproduce identical sequences bit-exactly, and independent
/// jobs are keyed by their stream index.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed ^ 0x9e3779b97f4a7c15ull, stream)), ctr_(0) {}

    std::uint64_t next() { return mix(key_, ctr_++); }

    /// Uniform in [0, 1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

    /// Uniform in {0, ..., n-1} (n > 0) by rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t bound = std::uint64_t(-1) - std::uint64_t(-1) % n;
        std::uint64_t v;
        do { v = next(); } while (v >= bound);
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    static std::uint64_t mix(std::uint64_t key, std::uint64_t ctr) {
        std::uint64_t z = key + ctr * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

/// Documented seed-splitting rule: job i of experiment seed s draws from
/// stream i.
inline CounterRng job_rng(std::uint64_t seed, std::uint64_t job) {
    return CounterRng(seed, job);
}

}  // namespace cberlab

#endif
