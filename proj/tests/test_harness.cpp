#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cberlab/harness.hpp"

using namespace cberlab;
using nlohmann::json;

namespace {

json strip_timestamps(json j) {
    if (j.is_array())
        for (auto& r : j) {
            r.erase("timestamp");
            r.erase("timing");
        }
    else {
        j.erase("timestamp");
        j.erase("timing");
    }
    return j;
}

ExperimentConfig quick_walk(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.experiment = "walk-frequency";
    cfg.seed = seed;
    cfg.params = json{{"walks", 6}, {"steps", 30000}, {"abs_tol", 0.02}};
    return cfg;
}

}  // namespace

TEST_CASE("catalogue is non-empty with unique ids") {
    auto cat = list_experiments();
    CHECK(!cat.empty());
    std::set<std::string> ids;
    for (const auto& e : cat) {
        CHECK(ids.insert(e.id).second);
        CHECK(!e.summary.empty());
    }
    // Every id in the acceptance suite is catalogued.
    for (const auto& job : acceptance_suite(1)) CHECK(ids.count(job.experiment) == 1);
}

TEST_CASE("unknown experiments fail loudly") {
    ExperimentConfig cfg;
    cfg.experiment = "no-such-thing";
    CHECK_THROWS_AS((void)run_experiment(cfg), UnknownExperimentError);
}

TEST_CASE("config JSON round trip") {
    ExperimentConfig cfg = quick_walk(9);
    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.experiment == cfg.experiment);
    CHECK(back.seed == cfg.seed);
    CHECK(back.params == cfg.params);
}

TEST_CASE("report shape: config echo, environment stamp, per-check fields") {
    Report r = run_experiment(quick_walk(7));
    json j = report_to_json(r);
    CHECK(j.at("config").at("experiment") == "walk-frequency");
    CHECK(j.at("environment").contains("compiler"));
    CHECK(!j.at("timestamp").get<std::string>().empty());
    REQUIRE(!r.checks.empty());
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("pass"));
        CHECK(c.contains("measured"));
        CHECK(c.contains("expected"));
    }
    CHECK(r.all_pass);
}

TEST_CASE("replaying a config is byte-identical modulo the timestamp") {
    Report a = run_experiment(quick_walk(3));
    Report b = run_experiment(quick_walk(3));
    CHECK(strip_timestamps(report_to_json(a)).dump() ==
          strip_timestamps(report_to_json(b)).dump());
    Report c = run_experiment(quick_walk(4));
    CHECK(strip_timestamps(report_to_json(a)).dump() !=
          strip_timestamps(report_to_json(c)).dump());
}

TEST_CASE("a deliberately broken tolerance fails with the instance recorded") {
    ExperimentConfig cfg = quick_walk(7);
    cfg.params["abs_tol"] = 1e-12;
    Report r = run_experiment(cfg);
    CHECK(!r.all_pass);
    bool found_replay = false;
    for (const auto& c : r.checks)
        if (!c.pass) {
            CHECK(!c.measured.is_null());
            if (!c.replay.is_null()) found_replay = true;
        }
    CHECK(found_replay);
}

TEST_CASE("batches preserve job order and seed splitting") {
    std::vector<ExperimentConfig> jobs = {quick_walk(1), quick_walk(2)};
    auto reports = run_batch(jobs);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].config.seed == 1);
    CHECK(reports[1].config.seed == 2);
    // Same content as running sequentially.
    CHECK(strip_timestamps(report_to_json(reports[0])).dump() ==
          strip_timestamps(report_to_json(run_experiment(jobs[0]))).dump());
}

TEST_CASE("thread cap respects CBERLAB_THREADS") {
    CHECK(thread_cap() >= 1);
}

TEST_CASE("csv emission for tables") {
    ExperimentConfig cfg;
    cfg.experiment = "ramsey-obstruction";
    cfg.seed = 5;
    cfg.params = json{{"brute_samples", 5}, {"brute_max_n", 8}, {"mean_n", 16},
                      {"mean_seeds", 10},  {"delta_max_n", 2}};
    Report r = run_experiment(cfg);
    REQUIRE(r.tables.count("delta_curve") == 1);
    std::string csv = report_csv(r, "delta_curve");
    CHECK(csv.find("1,1") != std::string::npos);
    CHECK_THROWS_AS((void)report_csv(r, "no-such-table"), std::out_of_range);
}
