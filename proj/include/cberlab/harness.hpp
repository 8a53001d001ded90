#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace cberlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    nlohmann::json measured;   // what was computed
    nlohmann::json expected;   // bound / tolerance it was held against
    double runtime_s = 0;
    nlohmann::json replay;     // violating instance, when pass == false
};

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    nlohmann::json params = nlohmann::json::object();
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

// The timestamp is the single nondeterministic field: stripping it must make
// two reports of the same config byte-identical within one build.
struct Report {
    ExperimentConfig config;
    std::vector<CheckResult> checks;
    bool all_pass = false;
    std::string timestamp;
    nlohmann::json environment;
    std::map<std::string, nlohmann::json> tables;  // name -> array of rows
};

nlohmann::json report_to_json(const Report& r);
std::string report_csv(const Report& r, const std::string& table);

struct UnknownExperimentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Report run_experiment(const ExperimentConfig& cfg);

struct ExperimentInfo {
    std::string id;
    std::string summary;
};

std::vector<ExperimentInfo> list_experiments();

// Batch of jobs run in parallel (capped by CBERLAB_THREADS), reports in job
// order.  Job i of a batch with seed s uses seed drawn from stream i.
std::vector<Report> run_batch(const std::vector<ExperimentConfig>& jobs);

int thread_cap();

// The full default suite: one job per catalogued experiment, seeds split from
// `seed`.
std::vector<ExperimentConfig> acceptance_suite(std::uint64_t seed);

}  // namespace cberlab
