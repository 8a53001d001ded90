#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cberlab/walks.hpp"

using namespace cberlab;

namespace {

WalkConfig z_config(int steps, std::uint64_t seed) {
    WalkConfig cfg;
    cfg.group = GroupModel(GroupKind::Z, 1);
    cfg.mu = StepDistribution::uniform_generators(cfg.group);
    cfg.steps = steps;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("walks are deterministic in (seed, stream)") {
    WalkConfig cfg = z_config(500, 9);
    WalkPath a = sample_walk(cfg), b = sample_walk(cfg);
    CHECK(a.forward == b.forward);
    WalkPath c = sample_walk(cfg, 1);
    CHECK(a.forward != c.forward);
}

TEST_CASE("steps are unit increments from the start") {
    WalkConfig cfg = z_config(2000, 3);
    WalkPath p = sample_walk(cfg);
    REQUIRE(p.forward.size() == 2000);
    CHECK(p.at(0) == cfg.group.identity());
    for (std::int64_t i = 1; i <= p.max_index(); ++i)
        CHECK(std::abs(p.at(i).coords[0] - p.at(i - 1).coords[0]) == 1);
}

TEST_CASE("degenerate configs are rejected") {
    WalkConfig cfg = z_config(0, 1);
    CHECK_THROWS_AS((void)sample_walk(cfg), ConfigError);
    StepDistribution bad;
    bad.steps = {{GroupModel(GroupKind::Z, 1).parse_element("1"), 1.0}};  // not symmetric
    CHECK_THROWS(bad.validate(GroupModel(GroupKind::Z, 1)));
}

TEST_CASE("3Z frequency approaches one third") {
    WalkConfig cfg = z_config(50000, 7);
    FrequencyEstimate est = freq_estimate(
        [](const Element& e) { return ((e.coords[0] % 3) + 3) % 3 == 0; }, cfg, 10);
    CHECK(std::abs(est.estimate - 1.0 / 3.0) < 0.02);
    CHECK(est.std_error > 0);
    CHECK(est.walks == 10);
}

TEST_CASE("lazy walk kills the parity period") {
    WalkConfig cfg = z_config(50000, 11);
    cfg.mu = StepDistribution::uniform_generators(cfg.group, true);
    FrequencyEstimate est =
        freq_estimate([](const Element& e) { return e.coords[0] % 2 == 0; }, cfg, 10);
    CHECK(std::abs(est.estimate - 0.5) < 0.02);
}

TEST_CASE("visit profile: identities and subadditivity") {
    WalkConfig cfg = z_config(20000, 5);
    WalkPath p = sample_walk(cfg);
    auto classes = [](const Element& e) { return ((e.coords[0] % 3) + 3) % 3; };
    VisitProfile vp = visit_profile(classes, p, 3, 5000, 123);
    CHECK(vp.subadditivity_checks > 0);
    CHECK(vp.subadditivity_violations == 0);
    CHECK(vp.alpha_f_identity_ok);
    // With k classes in total, F^n_k counts every visit: F^n_3 = n.
    CHECK(vp.f_values.size() == 3);
    CHECK(vp.f_values[2] == doctest::Approx(vp.n));
    // Class averages sum to one.
    double total = 0;
    for (const auto& [c, avg] : vp.class_average) total += avg;
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("f_statistic window consistency") {
    WalkConfig cfg = z_config(1000, 6);
    WalkPath p = sample_walk(cfg);
    auto classes = [](const Element& e) { return e.coords[0]; };
    // k = 1 over a window of length n is at least n / (number of distinct
    // values) and at most n.
    double f = f_statistic(classes, p, 0, 100, 1);
    CHECK(f >= 1.0);
    CHECK(f <= 100.0);
    // Monotone in k.
    CHECK(f_statistic(classes, p, 0, 100, 2) >= f);
}

TEST_CASE("mass transport: successor transport balances") {
    auto g = [](int x, int y, const MarkField& f) {
        return (y == x + 1 && f.marked(y)) ? 1.0 : 0.0;
    };
    MassTransportReport rep = mass_transport_check(iid_mark_sampler(2, 0.5), g, 1, 50000, 21);
    CHECK(rep.pass);
    CHECK(std::abs(rep.lhs - 0.5) < 0.02);
    CHECK(std::abs(rep.rhs - 0.5) < 0.02);
}

TEST_CASE("mass transport flags a non-invariant transport") {
    // Sends mass only when the receiving site is the origin: breaks the
    // invariance between the two expectations.
    auto g = [](int x, int y, const MarkField& f) {
        return (y == 0 && x == -1 && f.marked(0)) ? 1.0 : 0.0;
    };
    MassTransportReport rep = mass_transport_check(iid_mark_sampler(2, 0.5), g, 1, 50000, 22);
    CHECK(!rep.pass);
}
