#include "cberlab/ire.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cberlab {

namespace {

constexpr long long kVarLimit = 2'000'000;

struct PairIndexer {
    int n = 0, pairs = 0;
    std::vector<std::vector<int>> idx;
    explicit PairIndexer(int n_) : n(n_), idx(n_, std::vector<int>(n_, -1)) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) idx[i][j] = pairs++;
    }
};

std::uint32_t restrict_edges(std::uint32_t edges, const PairIndexer& big, const PairIndexer& small,
                             int offset) {
    std::uint32_t out = 0;
    for (int i = 0; i < small.n; ++i)
        for (int j = i + 1; j < small.n; ++j)
            if (edges & (1u << big.idx[i + offset][j + offset])) out |= 1u << small.idx[i][j];
    return out;
}

bool homogeneous(std::uint32_t edges, std::uint32_t marks, const PairIndexer& pi) {
    int seen = -1;
    for (int i = 0; i < pi.n; ++i) {
        if (!(marks & (1u << i))) continue;
        for (int j = i + 1; j < pi.n; ++j) {
            if (!(marks & (1u << j))) continue;
            int c = (edges >> pi.idx[i][j]) & 1;
            if (seen < 0)
                seen = c;
            else if (c != seen)
                return false;
        }
    }
    return true;
}

Rational colouring_prob(std::uint32_t edges, int pairs, const Rational& p) {
    Rational out = 1;
    for (int k = 0; k < pairs; ++k) out *= (edges & (1u << k)) ? p : Rational(1) - p;
    return out;
}

std::string mask_string(std::uint32_t mask, int bits) {
    std::string s(bits, '0');
    for (int i = 0; i < bits; ++i)
        if (mask & (1u << i)) s[i] = '1';
    return s;
}

// Incrementally numbered equality rows, so columns can be streamed in one
// pass over the decorated patterns.
struct RowBank {
    std::vector<Rational> rhs;
    int fresh(Rational value) {
        rhs.push_back(std::move(value));
        return static_cast<int>(rhs.size()) - 1;
    }
    template <typename K>
    int keyed(std::map<K, int>& index, const K& key) {
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int r = fresh(Rational(0));
        index.emplace(key, r);
        return r;
    }
};

IreBuild build_ramsey(const IreOptions& o) {
    const PairIndexer big(o.n), small(std::max(o.n - 1, 0));
    if ((1LL << big.pairs) * (o.n + 1) > kVarLimit)
        throw LpSizeError((1LL << big.pairs) * (o.n + 1));

    RowBank rows;
    const int norm_row = rows.fresh(Rational(1));
    std::map<std::uint32_t, int> reduct_rows;
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> shift_rows;

    IreBuild out;
    std::vector<std::vector<std::pair<int, Rational>>> entries;
    std::vector<Rational> objs;
    std::vector<bool> marks_zero;
    long long count = 0;
    for (std::uint32_t c = 0; c < (1u << big.pairs); ++c) {
        const int reduct = rows.keyed(reduct_rows, c);
        rows.rhs[reduct] = colouring_prob(c, big.pairs, o.p);
        for (std::uint32_t t = 0; t < (1u << o.n); ++t) {
            if (o.require_nonempty && t == 0) continue;
            if (!homogeneous(c, t, big)) continue;
            if (++count > kVarLimit) throw LpSizeError(count);
            std::vector<std::pair<int, Rational>> col = {{norm_row, Rational(1)},
                                                         {reduct, Rational(1)}};
            if (o.n > 1) {
                auto left = std::make_pair(restrict_edges(c, big, small, 0),
                                           t & ((1u << (o.n - 1)) - 1));
                auto right = std::make_pair(restrict_edges(c, big, small, 1), t >> 1);
                if (left != right) {
                    col.emplace_back(rows.keyed(shift_rows, left), Rational(1));
                    col.emplace_back(rows.keyed(shift_rows, right), Rational(-1));
                }
            }
            const bool marked_zero = (t & 1u) != 0;
            Rational obj = (o.maximize_density && marked_zero) ? Rational(1) : Rational(0);
            entries.push_back(std::move(col));
            objs.push_back(std::move(obj));
            marks_zero.push_back(marked_zero);
            out.var_labels.push_back("c:" + mask_string(c, big.pairs) + " T:" +
                                     mask_string(t, o.n));
        }
    }
    if (o.min_density) {
        // P[0 marked] - slack = min_density
        const int density_row = rows.fresh(*o.min_density);
        for (std::size_t v = 0; v < entries.size(); ++v)
            if (marks_zero[v]) entries[v].emplace_back(density_row, Rational(1));
        entries.push_back({{density_row, Rational(-1)}});
        objs.emplace_back(0);
        out.var_labels.push_back("slack:density");
    }
    out.lp.rows = static_cast<int>(rows.rhs.size());
    out.lp.rhs = rows.rhs;
    for (std::size_t v = 0; v < entries.size(); ++v)
        out.lp.add_column(std::move(entries[v]), std::move(objs[v]), std::move(out.var_labels[v]));
    out.var_labels = out.lp.col_names;
    return out;
}

IreBuild build_linearization(const IreOptions& o) {
    long long fact = 1;
    for (int k = 2; k <= o.n; ++k) {
        fact *= k;
        if (fact > kVarLimit) throw LpSizeError(fact);
    }
    RowBank rows;
    const int norm_row = rows.fresh(Rational(1));
    std::map<std::vector<int>, int> shift_rows;

    auto drop = [](const std::vector<int>& perm, int victim, int shift) {
        std::vector<int> out;
        for (int v : perm)
            if (v != victim) out.push_back(v - shift);
        return out;
    };

    IreBuild out;
    std::vector<std::vector<std::pair<int, Rational>>> entries;
    std::vector<int> perm(o.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::pair<int, Rational>> col = {{norm_row, Rational(1)}};
        if (o.n > 1) {
            auto left = drop(perm, o.n - 1, 0);
            auto right = drop(perm, 0, 1);
            if (left != right) {
                col.emplace_back(rows.keyed(shift_rows, left), Rational(1));
                col.emplace_back(rows.keyed(shift_rows, right), Rational(-1));
            }
        }
        std::ostringstream label;
        label << "order:";
        for (std::size_t i = 0; i < perm.size(); ++i) label << (i ? "<" : "") << perm[i];
        entries.push_back(std::move(col));
        out.var_labels.push_back(label.str());
    } while (std::next_permutation(perm.begin(), perm.end()));

    out.lp.rows = static_cast<int>(rows.rhs.size());
    out.lp.rhs = rows.rhs;
    for (std::size_t v = 0; v < entries.size(); ++v)
        out.lp.add_column(std::move(entries[v]), Rational(0), std::move(out.var_labels[v]));
    out.var_labels = out.lp.col_names;
    return out;
}

IreBuild build_trivial(const IreOptions& o) {
    const PairIndexer big(o.n), small(std::max(o.n - 1, 0));
    if ((1LL << big.pairs) > kVarLimit) throw LpSizeError(1LL << big.pairs);
    RowBank rows;
    const int norm_row = rows.fresh(Rational(1));
    std::map<std::uint32_t, int> reduct_rows;
    std::map<std::uint32_t, int> shift_rows;

    IreBuild out;
    std::vector<std::vector<std::pair<int, Rational>>> entries;
    for (std::uint32_t c = 0; c < (1u << big.pairs); ++c) {
        const int reduct = rows.keyed(reduct_rows, c);
        rows.rhs[reduct] = colouring_prob(c, big.pairs, o.p);
        std::vector<std::pair<int, Rational>> col = {{norm_row, Rational(1)},
                                                     {reduct, Rational(1)}};
        if (o.n > 1) {
            std::uint32_t left = restrict_edges(c, big, small, 0);
            std::uint32_t right = restrict_edges(c, big, small, 1);
            if (left != right) {
                col.emplace_back(rows.keyed(shift_rows, left), Rational(1));
                col.emplace_back(rows.keyed(shift_rows, right), Rational(-1));
            }
        }
        entries.push_back(std::move(col));
        out.var_labels.push_back("c:" + mask_string(c, big.pairs));
    }
    out.lp.rows = static_cast<int>(rows.rhs.size());
    out.lp.rhs = rows.rhs;
    for (std::size_t v = 0; v < entries.size(); ++v)
        out.lp.add_column(std::move(entries[v]), Rational(0), std::move(out.var_labels[v]));
    out.var_labels = out.lp.col_names;
    return out;
}

std::string family_name(IreFamily f) {
    switch (f) {
        case IreFamily::Trivial: return "trivial";
        case IreFamily::Linearization: return "linearization";
        case IreFamily::Ramsey: return "ramsey";
    }
    return "ramsey";
}

IreFamily family_from(const std::string& s) {
    if (s == "trivial") return IreFamily::Trivial;
    if (s == "linearization") return IreFamily::Linearization;
    if (s == "ramsey") return IreFamily::Ramsey;
    throw std::invalid_argument("unknown problem family: " + s);
}

std::string rat_str(const Rational& r) { return r.str(); }

std::string status_name(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "infeasible";
}

}  // namespace

IreBuild build_ire_lp(const IreOptions& opts) {
    if (opts.n < 1) throw std::invalid_argument("window size must be >= 1");
    if (opts.p.sign() < 0 || opts.p > 1) throw std::invalid_argument("p must lie in [0,1]");
    switch (opts.family) {
        case IreFamily::Trivial: return build_trivial(opts);
        case IreFamily::Linearization: return build_linearization(opts);
        case IreFamily::Ramsey: return build_ramsey(opts);
    }
    throw std::invalid_argument("unknown problem family");
}

IreResult solve_ire(const IreOptions& opts) {
    IreBuild build = build_ire_lp(opts);
    return IreResult{opts, solve_lp(build.lp)};
}

bool verify_ire(const IreResult& result) {
    IreBuild build = build_ire_lp(result.opts);
    return verify_solution(build.lp, result.sol);
}

nlohmann::json ire_to_json(const IreResult& r) {
    nlohmann::json j;
    j["family"] = family_name(r.opts.family);
    j["n"] = r.opts.n;
    j["p"] = rat_str(r.opts.p);
    j["require_nonempty"] = r.opts.require_nonempty;
    j["min_density"] = r.opts.min_density ? nlohmann::json(rat_str(*r.opts.min_density))
                                          : nlohmann::json(nullptr);
    j["maximize_density"] = r.opts.maximize_density;
    j["status"] = status_name(r.sol.status);
    j["value"] = rat_str(r.sol.value);
    j["iterations"] = r.sol.iterations;
    nlohmann::json x = nlohmann::json::object();
    for (std::size_t i = 0; i < r.sol.x.size(); ++i)
        if (!r.sol.x[i].is_zero()) x[std::to_string(i)] = rat_str(r.sol.x[i]);
    j["x"] = std::move(x);
    j["x_size"] = r.sol.x.size();
    nlohmann::json dual = nlohmann::json::array();
    for (const auto& v : r.sol.dual) dual.push_back(rat_str(v));
    j["dual"] = std::move(dual);
    nlohmann::json ray = nlohmann::json::object();
    for (std::size_t i = 0; i < r.sol.ray.size(); ++i)
        if (!r.sol.ray[i].is_zero()) ray[std::to_string(i)] = rat_str(r.sol.ray[i]);
    j["ray"] = std::move(ray);
    j["ray_size"] = r.sol.ray.size();
    return j;
}

IreResult ire_from_json(const nlohmann::json& j) {
    IreResult r;
    r.opts.family = family_from(j.at("family").get<std::string>());
    r.opts.n = j.at("n").get<int>();
    r.opts.p = Rational(j.at("p").get<std::string>());
    r.opts.require_nonempty = j.at("require_nonempty").get<bool>();
    if (!j.at("min_density").is_null())
        r.opts.min_density = Rational(j.at("min_density").get<std::string>());
    r.opts.maximize_density = j.at("maximize_density").get<bool>();
    const std::string st = j.at("status").get<std::string>();
    r.sol.status = st == "optimal"      ? LpStatus::Optimal
                   : st == "unbounded"  ? LpStatus::Unbounded
                                        : LpStatus::Infeasible;
    r.sol.value = Rational(j.at("value").get<std::string>());
    r.sol.iterations = j.at("iterations").get<long>();
    r.sol.x.assign(j.at("x_size").get<std::size_t>(), Rational(0));
    for (const auto& [k, v] : j.at("x").items())
        r.sol.x[std::stoul(k)] = Rational(v.get<std::string>());
    for (const auto& v : j.at("dual")) r.sol.dual.push_back(Rational(v.get<std::string>()));
    r.sol.ray.assign(j.at("ray_size").get<std::size_t>(), Rational(0));
    for (const auto& [k, v] : j.at("ray").items())
        r.sol.ray[std::stoul(k)] = Rational(v.get<std::string>());
    return r;
}

Rational max_marked_density(int n, const Rational& p) {
    IreOptions opts;
    opts.family = IreFamily::Ramsey;
    opts.n = n;
    opts.p = p;
    opts.maximize_density = true;
    IreResult r = solve_ire(opts);
    if (r.sol.status != LpStatus::Optimal)
        throw std::logic_error("density LP should always have an optimum");
    return r.sol.value;
}

}  // namespace cberlab
