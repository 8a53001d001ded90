#ifndef CBERLAB_WALKS_HPP
#define CBERLAB_WALKS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cberlab/group.hpp"
#include "cberlab/rng.hpp"

namespace cberlab {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Finite symmetric step distribution on a group. `lazy` adds a hold
/// probability of 1/2 (kills parity periodicity on bipartite Cayley graphs).
struct StepDistribution {
    std::vector<std::pair<Element, double>> steps;  // sorted by element
    bool lazy = false;

    static StepDistribution uniform_generators(const GroupModel& g, bool lazy = false);
    /// Validates symmetry (mu(g) = mu(g^-1)), normalization, and that the
    /// support generates the group (bounded product search).
    void validate(const GroupModel& g) const;
};

struct WalkConfig {
    GroupModel group = GroupModel(GroupKind::Z, 1);
    StepDistribution mu;
    int steps = 0;
    std::uint64_t seed = 0;
    Element start;  // defaults to identity
    bool two_sided = false;
};

/// A sampled path Z_0, ..., Z_{n-1}; two-sided paths carry indices in
/// [-n, n] with at(0) = start.
struct WalkPath {
    std::vector<Element> forward;   // Z_0 .. Z_{n-1} (includes start at 0)
    std::vector<Element> backward;  // Z_{-1}, Z_{-2}, ... (two-sided only)

    const Element& at(std::int64_t i) const;
    std::int64_t min_index() const { return -static_cast<std::int64_t>(backward.size()); }
    std::int64_t max_index() const { return static_cast<std::int64_t>(forward.size()) - 1; }
};

WalkPath sample_walk(const WalkConfig& cfg, std::uint64_t stream = 0);

struct FrequencyEstimate {
    double estimate = 0;
    double std_error = 0;
    int walks = 0;
    int steps_per_walk = 0;
};

using MembershipPredicate = std::function<bool(const Element&)>;

/// Monte Carlo estimate of the Cesaro visit frequency of W: grand mean of
/// per-walk empirical frequencies, SE from the across-walk variance.
FrequencyEstimate freq_estimate(const MembershipPredicate& w, const WalkConfig& cfg,
                                int walks);

using PartitionOracle = std::function<std::int64_t(const Element&)>;

struct VisitProfile {
    /// Per tracked class: running average alpha^n_0 over [0, n).
    std::map<std::int64_t, double> class_average;
    /// F^n_k for k = 1..K: n * (sum of the k largest class averages).
    std::vector<double> f_values;
    int n = 0;
    int subadditivity_checks = 0;
    int subadditivity_violations = 0;
    bool alpha_f_identity_ok = true;
};

/// Visit-class statistics of a path over [0, n) plus verification of the
/// superadditive aggregate inequalities F^{i+j}_k <= F^i_k + F^j_k(shifted)
/// on sampled split points.
VisitProfile visit_profile(const PartitionOracle& classes, const WalkPath& path,
                           int k_max, int sampled_splits, std::uint64_t seed);

/// Raw F^n_k over the index window [m, m+n) of a path.
double f_statistic(const PartitionOracle& classes, const WalkPath& path,
                   std::int64_t m, int n, int k);

struct MassTransportReport {
    double lhs = 0, lhs_se = 0;  // E[sum_y g(0, y)]
    double rhs = 0, rhs_se = 0;  // E[sum_x g(x, 0)]
    bool pass = false;           // |lhs - rhs| <= 3 * combined SE
    bool invariance_warning = false;
    int samples = 0;
};

/// Marks on a Z-window [-radius, radius].
struct MarkField {
    int radius = 0;
    std::vector<std::uint8_t> marks;  // size 2*radius+1
    bool marked(int x) const { return marks[static_cast<std::size_t>(x + radius)] != 0; }
};

using MarkSampler = std::function<MarkField(CounterRng&)>;
/// Transport function g(x, y, field); must be finitely supported in y for
/// each x within the sampled window.
using TransportFn = std::function<double(int x, int y, const MarkField&)>;

MassTransportReport mass_transport_check(const MarkSampler& sampler, const TransportFn& g,
                                         int support_radius, int samples,
                                         std::uint64_t seed);

/// IID Bernoulli(p) marks on [-radius, radius].
MarkSampler iid_mark_sampler(int radius, double p);

}  // namespace cberlab

#endif
