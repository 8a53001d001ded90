#include "cberlab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace cberlab {

StepDistribution StepDistribution::uniform_generators(const GroupModel& g, bool lazy) {
    StepDistribution mu;
    auto gens = g.generators();
    for (const auto& s : gens) mu.steps.emplace_back(s, 1.0 / gens.size());
    mu.lazy = lazy;
    return mu;
}

void StepDistribution::validate(const GroupModel& g) const {
    if (steps.empty()) throw ConfigError("empty step distribution");
    double total = 0;
    std::map<Element, double> table;
    for (const auto& [e, p] : steps) {
        if (p <= 0) throw ConfigError("step probabilities must be positive");
        if (e == g.identity()) throw ConfigError("identity steps not allowed; use lazy mode");
        if (table.count(e)) throw ConfigError("duplicate step element");
        table[e] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("step probabilities must sum to 1");
    for (const auto& [e, p] : table) {
        auto it = table.find(g.inv(e));
        if (it == table.end() || std::abs(it->second - p) > 1e-12)
            throw ConfigError("step distribution is not symmetric");
    }
    // Bounded generation check: products of support elements must reach every
    // standard generator.
    std::set<Element> reach{g.identity()};
    for (int depth = 0; depth < 8; ++depth) {
        std::set<Element> next = reach;
        for (const auto& x : reach)
            for (const auto& [s, p] : table) next.insert(g.mul(x, s));
        if (next.size() == reach.size()) break;
        reach = std::move(next);
    }
    for (const auto& gen : g.generators())
        if (!reach.count(gen))
            throw ConfigError("step distribution support does not generate the group");
}

const Element& WalkPath::at(std::int64_t i) const {
    if (i >= 0) return forward.at(static_cast<std::size_t>(i));
    return backward.at(static_cast<std::size_t>(-i - 1));
}

namespace {

Element draw_step(const GroupModel& g, const StepDistribution& mu, CounterRng& rng) {
    if (mu.lazy && rng.bernoulli(0.5)) return g.identity();
    double u = rng.uniform();
    double acc = 0;
    for (const auto& [e, p] : mu.steps) {
        acc += p;
        if (u < acc) return e;
    }
    return mu.steps.back().first;
}

}  // namespace

WalkPath sample_walk(const WalkConfig& cfg, std::uint64_t stream) {
    cfg.mu.validate(cfg.group);
    if (cfg.steps < 1) throw ConfigError("walk length must be >= 1");
    Element start = cfg.start;
    if (start.coords.empty() && start.word.empty() && cfg.group.kind() != GroupKind::Free)
        start = cfg.group.identity();

    WalkPath path;
    CounterRng rng = job_rng(cfg.seed, stream);
    Element cur = start;
    path.forward.push_back(cur);
    for (int i = 1; i < cfg.steps; ++i) {
        cur = cfg.group.mul(cur, draw_step(cfg.group, cfg.mu, rng));
        path.forward.push_back(cur);
    }
    if (cfg.two_sided) {
        CounterRng back_rng = job_rng(cfg.seed ^ 0x5851f42d4c957f2dull, stream);
        cur = start;
        for (int i = 0; i < cfg.steps; ++i) {
            cur = cfg.group.mul(cur, draw_step(cfg.group, cfg.mu, back_rng));
            path.backward.push_back(cur);
        }
    }
    return path;
}

FrequencyEstimate freq_estimate(const MembershipPredicate& w, const WalkConfig& cfg,
                                int walks) {
    if (walks < 1) throw ConfigError("need at least one walk");
    std::vector<double> means;
    means.reserve(walks);
    for (int j = 0; j < walks; ++j) {
        WalkPath path = sample_walk(cfg, static_cast<std::uint64_t>(j));
        std::int64_t hits = 0;
        for (const auto& z : path.forward) hits += w(z) ? 1 : 0;
        means.push_back(static_cast<double>(hits) / path.forward.size());
    }
    FrequencyEstimate est;
    est.walks = walks;
    est.steps_per_walk = cfg.steps;
    est.estimate = std::accumulate(means.begin(), means.end(), 0.0) / walks;
    double var = 0;
    for (double m : means) var += (m - est.estimate) * (m - est.estimate);
    if (walks > 1) est.std_error = std::sqrt(var / (walks - 1) / walks);
    return est;
}

double f_statistic(const PartitionOracle& classes, const WalkPath& path,
                   std::int64_t m, int n, int k) {
    std::map<std::int64_t, int> counts;
    for (std::int64_t i = m; i < m + n; ++i) counts[classes(path.at(i))]++;
    std::vector<int> vals;
    vals.reserve(counts.size());
    for (const auto& [c, v] : counts) vals.push_back(v);
    std::sort(vals.rbegin(), vals.rend());
    double sum = 0;
    for (int i = 0; i < k && i < static_cast<int>(vals.size()); ++i) sum += vals[i];
    return sum;
}

VisitProfile visit_profile(const PartitionOracle& classes, const WalkPath& path,
                           int k_max, int sampled_splits, std::uint64_t seed) {
    VisitProfile prof;
    int n = static_cast<int>(path.forward.size());
    prof.n = n;
    std::map<std::int64_t, int> counts;
    for (int i = 0; i < n; ++i) counts[classes(path.at(i))]++;
    for (const auto& [c, v] : counts)
        prof.class_average[c] = static_cast<double>(v) / n;

    std::vector<int> sorted;
    for (const auto& [c, v] : counts) sorted.push_back(v);
    std::sort(sorted.rbegin(), sorted.rend());
    for (int k = 1; k <= k_max; ++k) {
        double sum = 0;
        for (int i = 0; i < k && i < static_cast<int>(sorted.size()); ++i) sum += sorted[i];
        prof.f_values.push_back(sum);
    }

    // alpha-vs-F identity: consecutive differences of the sorted top-k sums
    // recover the sorted class averages.
    {
        double prev = 0;
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            double fk = prev + sorted[k];
            double diff = (fk - prev) / n;
            double expect = static_cast<double>(sorted[k]) / n;
            if (std::abs(diff - expect) > 1e-12) prof.alpha_f_identity_ok = false;
            prev = fk;
        }
    }

    // Subadditivity F^{i+j}_k <= F^i_k + F^j_k(S^i path) over sampled splits.
    CounterRng rng(seed, 0xF00Du);
    std::int64_t lo = path.min_index();
    for (int s = 0; s < sampled_splits; ++s) {
        int total = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(total - 1)));
        int j = total - i;
        std::int64_t base = lo + static_cast<std::int64_t>(
            rng.below(static_cast<std::uint64_t>(path.max_index() - total - lo + 2)));
        int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k_max)));
        double whole = f_statistic(classes, path, base, total, k);
        double left = f_statistic(classes, path, base, i, k);
        double right = f_statistic(classes, path, base + i, j, k);
        ++prof.subadditivity_checks;
        if (whole > left + right + 1e-9) ++prof.subadditivity_violations;
    }
    return prof;
}

MarkSampler iid_mark_sampler(int radius, double p) {
    return [radius, p](CounterRng& rng) {
        MarkField f;
        f.radius = radius;
        f.marks.resize(2 * static_cast<std::size_t>(radius) + 1);
        for (auto& m : f.marks) m = rng.bernoulli(p) ? 1 : 0;
        return f;
    };
}

MassTransportReport mass_transport_check(const MarkSampler& sampler, const TransportFn& g,
                                         int support_radius, int samples,
                                         std::uint64_t seed) {
    MassTransportReport rep;
    rep.samples = samples;

    auto run_side = [&](bool sent, std::uint64_t stream, double& mean, double& se) {
        double sum = 0, sumsq = 0;
        CounterRng rng(seed, stream);
        for (int s = 0; s < samples; ++s) {
            MarkField f = sampler(rng);
            double v = 0;
            for (int o = -support_radius; o <= support_radius; ++o)
                v += sent ? g(0, o, f) : g(o, 0, f);
            sum += v;
            sumsq += v * v;
        }
        mean = sum / samples;
        double var = (sumsq - sum * sum / samples) / std::max(1, samples - 1);
        se = std::sqrt(std::max(0.0, var) / samples);
    };
    run_side(true, 1, rep.lhs, rep.lhs_se);
    run_side(false, 2, rep.rhs, rep.rhs_se);

    // Shift-consistency pre-test on the sampler: mark frequency at offset 0
    // versus offset 1 should agree for an invariant sampler.
    {
        CounterRng rng(seed, 3);
        double m0 = 0, m1 = 0;
        int probes = std::min(samples, 20000);
        for (int s = 0; s < probes; ++s) {
            MarkField f = sampler(rng);
            m0 += f.marked(0);
            m1 += f.marked(1);
        }
        m0 /= probes;
        m1 /= probes;
        double se01 = std::sqrt(0.5 / probes);
        if (std::abs(m0 - m1) > 5 * se01) rep.invariance_warning = true;
    }

    double combined = std::sqrt(rep.lhs_se * rep.lhs_se + rep.rhs_se * rep.rhs_se);
    rep.pass = std::abs(rep.lhs - rep.rhs) <= 3 * combined + 1e-12;
    return rep;
}

}  // namespace cberlab
