// Acceptance gate: runs the full default suite and prints one PASS/FAIL line
// per criterion.  Exit code 0 iff every criterion passes.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "cberlab/harness.hpp"

using namespace cberlab;

namespace {

constexpr std::uint64_t kSuiteSeed = 20260826;

struct Criterion {
    int number;
    const char* label;
    const char* experiment;  // nullptr: handled specially
};

const Criterion kCriteria[] = {
    {1, "bijection recursion, disjointness, dichotomy (Z radius 64, 1000 pairs)",
     "bijection-recursion"},
    {2, "bijection equivariance on 200 sampled (A, B, gamma)", "bijection-equivariance"},
    {3, "equivariant colouring on 500 Cayley subgraphs + unmarked line", "colouring-cayley"},
    {4, "spanning forests on 100 random graphs vs union-find oracle", "spanning-forest"},
    {5, "walk frequencies: 3Z within 0.01 and 3 SE; parity under lazy walk", "walk-frequency"},
    {6, "visit profiles: subadditivity and the alpha-F identity", "visit-profile"},
    {7, "mass transport balance within 3 SE and 0.01 of 1/2", "mass-transport"},
    {8, "ramsey: brute-force agreement, K64 band, delta*(n) curve", "ramsey-obstruction"},
    {9, "LP certificates re-verify; linearization feasible to n = 6", "lp-soundness"},
    {10, "dyadic gallery: successor, transitivity, head flip", "dyadic-gallery"},
    {11, "all three naive rules defeated with replaying witnesses", "adversary-gallery"},
    {12, "byte-identical reports on replay (timestamps excluded)", nullptr},
};

nlohmann::json strip_timestamp(const Report& r) {
    nlohmann::json j = report_to_json(r);
    j.erase("timestamp");
    j.erase("timing");
    return j;
}

}  // namespace

int main() {
    std::vector<ExperimentConfig> suite = acceptance_suite(kSuiteSeed);
    std::vector<Report> first = run_batch(suite);
    std::map<std::string, const Report*> by_id;
    for (const auto& r : first) by_id[r.config.experiment] = &r;

    bool all_ok = true;
    for (const auto& c : kCriteria) {
        bool ok = false;
        if (c.experiment) {
            auto it = by_id.find(c.experiment);
            ok = it != by_id.end() && it->second->all_pass;
        } else {
            std::vector<Report> second = run_batch(suite);
            ok = second.size() == first.size();
            for (std::size_t i = 0; ok && i < first.size(); ++i)
                ok = strip_timestamp(first[i]).dump() == strip_timestamp(second[i]).dump();
        }
        std::printf("ACCEPTANCE %2d %-68s %s\n", c.number, c.label, ok ? "PASS" : "FAIL");
        std::fflush(stdout);
        if (!ok) {
            all_ok = false;
            if (c.experiment) {
                auto it = by_id.find(c.experiment);
                if (it != by_id.end())
                    for (const auto& chk : it->second->checks)
                        if (!chk.pass)
                            std::printf("    failed check: %s  measured=%s\n", chk.name.c_str(),
                                        chk.measured.dump().c_str());
            }
        }
    }
    return all_ok ? 0 : 1;
}
