#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cberlab/adversary.hpp"
#include "cberlab/bijection.hpp"
#include "cberlab/colouring.hpp"
#include "cberlab/dyadic.hpp"
#include "cberlab/forest.hpp"
#include "cberlab/harness.hpp"
#include "cberlab/ire.hpp"
#include "cberlab/linearize.hpp"
#include "cberlab/ramsey.hpp"
#include "cberlab/rng.hpp"
#include "cberlab/walks.hpp"
#include "cberlab/zline.hpp"

using nlohmann::json;
using namespace cberlab;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

Rational parse_rational(const std::string& s) {
    return Rational(s);
}

// ---------------------------------------------------------------------------

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& csv_table) {
    json cfg = load_json(config_path);
    std::vector<ExperimentConfig> jobs;
    if (cfg.contains("jobs")) {
        for (const auto& j : cfg.at("jobs")) jobs.push_back(config_from_json(j));
    } else if (cfg.contains("suite")) {
        jobs = acceptance_suite(cfg.value("seed", std::uint64_t(0)));
    } else {
        jobs.push_back(config_from_json(cfg));
    }
    std::vector<Report> reports = run_batch(jobs);
    json out = json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        out.push_back(report_to_json(r));
        all_pass = all_pass && r.all_pass;
    }
    std::string rendered = (out.size() == 1 ? out[0] : out).dump(2) + "\n";
    if (out_path.empty())
        std::cout << rendered;
    else
        write_text(out_path, rendered);
    if (!csv_table.empty())
        for (const auto& r : reports)
            if (r.tables.count(csv_table)) std::cout << report_csv(r, csv_table);
    for (const auto& r : reports)
        for (const auto& c : r.checks)
            std::fprintf(stderr, "%-24s %-32s %s\n", r.config.experiment.c_str(),
                         c.name.c_str(), c.pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}

int cmd_list() {
    for (const auto& e : list_experiments())
        std::printf("%-24s %s\n", e.id.c_str(), e.summary.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// expand verbs: Pattern JSON in, decorated JSON + human-readable report out.

int expand_bijection(const json& in) {
    Pattern p = pattern_from_json(in);
    const GroupModel& g = p.group;
    std::vector<Element> a, b;
    for (const auto& t : p.relations["A"]) a.push_back(t[0]);
    for (const auto& t : p.relations["B"]) b.push_back(t[0]);
    int radius = 0;
    for (const auto& e : p.universe) radius = std::max<int>(radius, static_cast<int>(e.length()));
    int stages = static_cast<int>(g.ball(radius).size());
    Window w = g.window(radius, bijection_padding(g, stages));
    BijectionTrace tr = greedy_bijection(g, a, b, w, stages);

    Pattern out = p;
    out.language = out.language.united(Language({{"Phi", 2}}));
    for (const auto& [x, y] : tr.phi)
        if (out.in_universe(x) && out.in_universe(y)) out.add("Phi", {x, y});
    std::cout << pattern_to_json(out).dump(2) << "\n";
    std::fprintf(stderr, "bijection: |A|=%zu |B|=%zu matched=%zu dichotomy=%s\n", a.size(),
                 b.size(), tr.phi.size(), tr.interior_dichotomy(a, b) ? "yes" : "NO");
    return 0;
}

int expand_colouring(const json& in, int d) {
    Pattern p = pattern_from_json(in);
    ColouringState st = equivariant_colouring(p, d);
    json colours = json::object();
    for (const auto& [v, c] : st.colour) colours[p.group.to_string(v)] = c;
    json uncol = json::array();
    for (const auto& v : st.uncoloured) uncol.push_back(p.group.to_string(v));
    std::cout << json{{"pattern", pattern_to_json(p)},
                      {"colours", colours},
                      {"uncoloured", uncol}}
                     .dump(2)
              << "\n";
    std::fprintf(stderr, "colouring: %zu coloured, %zu undetermined, proper=%s\n",
                 st.colour.size(), st.uncoloured.size(),
                 properly_coloured(p, st.colour) ? "yes" : "NO");
    return 0;
}

int expand_forest(const json& in) {
    int n = in.at("vertices").get<int>();
    std::vector<EdgeId> edges;
    for (const auto& e : in.at("edges")) edges.push_back({e[0].get<int>(), e[1].get<int>()});
    Exhaustion ex = in.at("exhaustion").get<Exhaustion>();
    ForestResult fr = spanning_forest(n, edges, ex);
    json stages = json::array();
    for (const auto& st : fr.stages) {
        json s = json::array();
        for (const auto& [u, v] : st) s.push_back(json::array({u, v}));
        stages.push_back(s);
    }
    std::cout << json{{"stages", stages}, {"failed_classes", fr.failed_classes}}.dump(2) << "\n";
    std::fprintf(stderr, "forest: %zu final edges, %zu disconnected classes\n", fr.edges.size(),
                 fr.failed_classes.size());
    return fr.ok() ? 0 : 1;
}

int expand_linearize(const json& in) {
    Pattern p = pattern_from_json(in.contains("pattern") ? in.at("pattern") : in);
    std::vector<OrderPiece> pieces;
    if (in.contains("pieces"))
        for (const auto& pc : in.at("pieces")) {
            OrderPiece piece;
            for (const auto& e : pc) piece.order.push_back(p.group.parse_element(e.get<std::string>()));
            pieces.push_back(std::move(piece));
        }
    MergeResult mr = merge_linearizations(p, pieces);
    json order = json::array();
    for (const auto& e : mr.order) order.push_back(p.group.to_string(e));
    std::cout << json{{"order", order}}.dump(2) << "\n";
    std::fprintf(stderr, "linearize: total order on %zu elements in %zu stages\n",
                 mr.order.size(), mr.stages.size());
    return 0;
}

int expand_tree_order(const json& in) {
    Pattern p = pattern_from_json(in);
    TreeOrderResult tr = tree_linearization(p);
    json comps = json::array();
    for (const auto& comp : tr.components) {
        json c = json::array();
        for (const auto& e : comp) c.push_back(p.group.to_string(e));
        comps.push_back(c);
    }
    std::cout << json{{"components", comps}}.dump(2) << "\n";
    std::fprintf(stderr, "tree-order: %zu components\n", tr.components.size());
    return 0;
}

int expand_zline(const json& in) {
    OrderSpec spec;
    for (const auto& b : in.at("blocks")) {
        OrderBlock blk;
        blk.id = b.at("id").get<std::string>();
        std::string tag = b.at("tag").get<std::string>();
        blk.tag = tag == "Z" ? BlockTag::Z : tag == "dense" ? BlockTag::Dense : BlockTag::Fin;
        blk.fin_size = b.value("fin_size", 0);
        spec.blocks.push_back(std::move(blk));
    }
    std::map<std::string, Rational> freqs;
    for (const auto& [id, v] : in.at("freqs").items())
        freqs[id] = parse_rational(v.get<std::string>());
    ZlineVerdict v = zline_select(spec, freqs);
    std::ostringstream mf;
    mf << v.max_frequency;
    std::cout << json{{"in_x", v.in_x}, {"selected", v.selected}, {"max_frequency", mf.str()}}.dump(2)
              << "\n";
    std::fprintf(stderr, "zline: %s\n", v.in_x ? ("selected " + v.selected).c_str() : "NOT-IN-X");
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_walk_freq(const std::string& group, const std::string& target, int steps, int walks,
                  std::uint64_t seed, bool lazy) {
    GroupModel g = GroupModel::parse(group);
    if (target.empty() || target.back() != 'Z' || g.kind() != GroupKind::Z)
        throw std::runtime_error("supported targets: kZ on the group Z (e.g. \"3Z\")");
    long k = target.size() == 1 ? 1 : std::stol(target.substr(0, target.size() - 1));
    if (k < 1) throw std::runtime_error("target modulus must be >= 1");
    WalkConfig wc;
    wc.group = g;
    wc.mu = StepDistribution::uniform_generators(g, lazy);
    wc.steps = steps;
    wc.seed = seed;
    FrequencyEstimate est = freq_estimate(
        [k](const Element& e) { return ((e.coords[0] % k) + k) % k == 0; }, wc, walks);
    double target_freq = 1.0 / static_cast<double>(k);
    double err = std::abs(est.estimate - target_freq);
    bool ok = err <= std::max(0.01, 3 * est.std_error);
    std::cout << json{{"estimate", est.estimate},
                      {"se", est.std_error},
                      {"target", target_freq},
                      {"verdict", ok ? "within-tolerance" : "OUTSIDE-TOLERANCE"}}
                     .dump(2)
              << "\n";
    return ok ? 0 : 1;
}

int cmd_ire_max_density(const std::string& problem, const std::string& p_str, int window,
                        const std::string& cert_path) {
    if (problem != "ramsey") throw std::runtime_error("max-density supports --problem ramsey");
    IreOptions o;
    o.family = IreFamily::Ramsey;
    o.n = window;
    o.p = parse_rational(p_str);
    o.maximize_density = true;
    IreResult r = solve_ire(o);
    if (!verify_ire(r)) throw std::runtime_error("certificate failed exact re-verification");
    write_text(cert_path, ire_to_json(r).dump(2) + "\n");
    std::ostringstream ds;
    ds << r.sol.value;
    std::cout << json{{"delta_star", ds.str()}, {"certificate_path", cert_path}}.dump(2) << "\n";
    return 0;
}

int cmd_ire_solve(const std::string& problem, int window, const std::string& p_str,
                  const std::string& min_density, const std::string& cert_path) {
    IreOptions o;
    o.n = window;
    if (problem == "ramsey")
        o.family = IreFamily::Ramsey;
    else if (problem == "linearization")
        o.family = IreFamily::Linearization;
    else if (problem == "trivial")
        o.family = IreFamily::Trivial;
    else
        throw std::runtime_error("unknown problem: " + problem);
    o.p = parse_rational(p_str);
    if (!min_density.empty()) o.min_density = parse_rational(min_density);
    IreResult r = solve_ire(o);
    if (!verify_ire(r)) throw std::runtime_error("certificate failed exact re-verification");
    if (!cert_path.empty()) write_text(cert_path, ire_to_json(r).dump(2) + "\n");
    const char* status = r.sol.status == LpStatus::Optimal     ? "feasible"
                         : r.sol.status == LpStatus::Infeasible ? "infeasible"
                                                                : "unbounded";
    std::cout << json{{"status", status},
                      {"certificate_path", cert_path.empty() ? json() : json(cert_path)}}
                     .dump(2)
              << "\n";
    return 0;
}

int cmd_ire_check(const std::string& cert_path) {
    IreResult r = ire_from_json(load_json(cert_path));
    bool ok = verify_ire(r);
    std::cout << json{{"verified", ok}}.dump(2) << "\n";
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_gallery_dyadic(const std::string& check, int len, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.experiment = "dyadic-gallery";
    cfg.seed = seed;
    cfg.params = json{{"len", len}, {"triples", 200000}, {"flip_pairs", 200000}};
    Report r = run_experiment(cfg);
    bool ok = true;
    json out = json::object();
    for (const auto& c : r.checks) {
        bool wanted = check == "all" || (check == "successor" && c.name == "successor-exact") ||
                      (check == "transitivity" && c.name == "transitivity") ||
                      (check == "flip" && c.name == "flip-head-reverses");
        if (!wanted) continue;
        out[c.name] = json{{"pass", c.pass}, {"measured", c.measured}};
        ok = ok && c.pass;
    }
    if (out.empty()) throw std::runtime_error("unknown check: " + check);
    std::cout << out.dump(2) << "\n";
    return ok ? 0 : 1;
}

int cmd_gallery_ramsey(int n, const std::string& p_str, int samples, std::uint64_t seed) {
    Rational p = parse_rational(p_str);
    double total = 0;
    int lo = n, hi = 0;
    for (int s = 0; s < samples; ++s) {
        PairColouring c = sample_pair_colouring(n, p, job_rng(seed, static_cast<std::uint64_t>(s)).next());
        int h = max_homogeneous(c);
        total += h;
        lo = std::min(lo, h);
        hi = std::max(hi, h);
    }
    std::cout << json{{"n", n}, {"samples", samples}, {"mean", total / samples},
                      {"min", lo},  {"max", hi}}
                     .dump(2)
              << "\n";
    return 0;
}

LocalRule load_rule(const std::string& spec) {
    if (spec == "coordinate-order") return coordinate_order_rule();
    if (spec == "all-r-ball") return all_r_ball_rule(1);
    if (spec == "match-a0") return match_a0_rule();
    json j = load_json(spec);
    std::vector<RelationSymbol> syms;
    for (const auto& s : j.at("language"))
        syms.push_back({s.at("name").get<std::string>(), s.at("arity").get<int>()});
    std::map<std::string, Decoration> table;
    for (const auto& [k, v] : j.at("table").items()) table[k] = v;
    return LocalRule::from_table(j.at("radius").get<int>(), Language(syms),
                                 j.value("name", spec), table, j.at("fallback"));
}

int cmd_gallery_adversary(const std::string& problem, const std::string& rule_spec) {
    AdversaryProblem prob;
    if (problem == "linearization")
        prob = AdversaryProblem::Linearization;
    else if (problem == "ramsey")
        prob = AdversaryProblem::Ramsey;
    else if (problem == "zline")
        prob = AdversaryProblem::Zline;
    else
        throw std::runtime_error("unknown problem: " + problem);
    LocalRule rule = load_rule(rule_spec);
    DefeatWitness w = adversary(prob, rule);
    json out = witness_to_json(w);
    out["replayed"] = w.found ? replay_defeat(rule, w) : false;
    std::cout << out.dump(2) << "\n";
    return w.found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-window laboratory for expansion problems on groups"};
    app.require_subcommand(1);

    std::string config_path, out_path, csv_table;
    auto* run = app.add_subcommand("run", "run an experiment config (JSON)");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_path, "write the JSON report here instead of stdout");
    run->add_option("--csv", csv_table, "also print this report table as CSV");

    app.add_subcommand("list", "list the experiment catalogue");

    auto* expand = app.add_subcommand("expand", "run one expansion procedure on a pattern");
    std::string kind, input_path;
    int colour_d = 3;
    expand->add_option("kind", kind, "bijection|colouring|forest|linearize|tree-order|zline")
        ->required();
    expand->add_option("input", input_path, "input JSON")->required();
    expand->add_option("--d", colour_d, "degree bound for colouring");

    auto* walk = app.add_subcommand("walk", "random-walk estimators");
    auto* freq = walk->add_subcommand("freq", "visit-frequency estimate");
    std::string group = "Z", target = "3Z";
    int steps = 200000, walks = 20;
    std::uint64_t seed = 7;
    bool lazy = false;
    freq->add_option("--group", group);
    freq->add_option("--target", target, "e.g. 3Z");
    freq->add_option("--steps", steps);
    freq->add_option("--walks", walks);
    freq->add_option("--seed", seed);
    freq->add_flag("--lazy", lazy, "lazy walk (hold probability 1/2)");

    auto* ire = app.add_subcommand("ire", "finite-window LP certification");
    auto* maxd = ire->add_subcommand("max-density", "maximal marked density delta*(n)");
    std::string problem = "ramsey", p_str = "1/2", cert_path = "ire-certificate.json",
                min_density;
    int window = 3;
    maxd->add_option("--problem", problem);
    maxd->add_option("--p", p_str, "colour probability, e.g. 1/2");
    maxd->add_option("--window", window);
    maxd->add_option("--out", cert_path, "certificate path");
    auto* solve = ire->add_subcommand("solve", "feasibility of a window family");
    solve->add_option("--problem", problem);
    solve->add_option("--p", p_str);
    solve->add_option("--window", window);
    solve->add_option("--min-density", min_density);
    solve->add_option("--out", cert_path);
    auto* check = ire->add_subcommand("check", "re-verify a stored certificate");
    std::string check_path;
    check->add_option("certificate", check_path)->required();
    ire->require_subcommand(1);

    auto* gallery = app.add_subcommand("gallery", "counterexample gallery");
    auto* gd = gallery->add_subcommand("dyadic", "dyadic order checks");
    std::string dy_check = "all";
    int len = 16;
    gd->add_option("--check", dy_check, "successor|transitivity|flip|all");
    gd->add_option("--len", len);
    gd->add_option("--seed", seed);
    auto* gr = gallery->add_subcommand("ramsey-clique", "homogeneous-set statistics");
    int rn = 64, rsamples = 200;
    gr->add_option("--n", rn);
    gr->add_option("--p", p_str);
    gr->add_option("--samples", rsamples);
    gr->add_option("--seed", seed);
    auto* ga = gallery->add_subcommand("adversary", "defeat a naive rule");
    std::string adv_problem = "linearization", rule_spec = "coordinate-order";
    ga->add_option("--problem", adv_problem);
    ga->add_option("--rule", rule_spec,
                   "built-in rule name (coordinate-order, all-r-ball, match-a0) or a table-rule JSON file");
    gallery->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_path, csv_table);
        if (app.got_subcommand("list")) return cmd_list();
        if (expand->parsed()) {
            json in = load_json(input_path);
            if (kind == "bijection") return expand_bijection(in);
            if (kind == "colouring") return expand_colouring(in, colour_d);
            if (kind == "forest") return expand_forest(in);
            if (kind == "linearize") return expand_linearize(in);
            if (kind == "tree-order") return expand_tree_order(in);
            if (kind == "zline") return expand_zline(in);
            throw std::runtime_error("unknown expand kind: " + kind);
        }
        if (freq->parsed()) return cmd_walk_freq(group, target, steps, walks, seed, lazy);
        if (maxd->parsed()) return cmd_ire_max_density(problem, p_str, window, cert_path);
        if (solve->parsed()) return cmd_ire_solve(problem, window, p_str, min_density, cert_path);
        if (check->parsed()) return cmd_ire_check(check_path);
        if (gd->parsed()) return cmd_gallery_dyadic(dy_check, len, seed);
        if (gr->parsed()) return cmd_gallery_ramsey(rn, p_str, rsamples, seed);
        if (ga->parsed()) return cmd_gallery_adversary(adv_problem, rule_spec);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
