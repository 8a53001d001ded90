#include "cberlab/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace cberlab {

int LpProblem::add_column(std::vector<std::pair<int, Rational>> entries, Rational objective,
                          std::string name) {
    for (auto& [r, v] : entries) {
        if (r < 0 || r >= rows) throw std::out_of_range("lp column entry outside row range");
        (void)v;
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    cols.push_back(std::move(entries));
    obj.push_back(std::move(objective));
    col_names.push_back(std::move(name));
    return static_cast<int>(cols.size()) - 1;
}

namespace {

bool lp_log_enabled() {
    static const bool on = std::getenv("CBERLAB_LP_LOG") != nullptr;
    return on;
}

void lp_log(const char* fmt, long a, long b) {
    if (lp_log_enabled()) std::fprintf(stderr, fmt, a, b);
}

// Sparse rational LU with row operations recorded for reuse on right-hand
// sides.  Pivots are picked by a cheap Markowitz-style rule (shortest active
// row, then least-populated column) which keeps fill-in small for the
// near-disjoint columns that show up in the invariance LPs.
struct SparseLU {
    int m = 0;
    struct Op {
        int target, pivot;
        Rational mult;
    };
    std::vector<Op> ops;
    std::vector<int> pivot_row;   // step -> row
    std::vector<int> pivot_col;   // step -> basis position
    std::vector<std::map<int, Rational>> urows;  // by row id

    void factor(int rows_n, const std::vector<std::vector<std::pair<int, Rational>>>& columns) {
        m = rows_n;
        ops.clear();
        pivot_row.assign(m, -1);
        pivot_col.assign(m, -1);
        urows.assign(m, {});
        std::vector<std::set<int>> colrows(m);
        for (int c = 0; c < m; ++c)
            for (const auto& [r, v] : columns[c]) {
                urows[r][c] = v;
                colrows[c].insert(r);
            }
        std::vector<bool> row_done(m, false), col_done(m, false);
        for (int step = 0; step < m; ++step) {
            int best = -1;
            std::size_t best_len = 0;
            for (int r = 0; r < m; ++r) {
                if (row_done[r] || urows[r].empty()) continue;
                if (best < 0 || urows[r].size() < best_len) {
                    best = r;
                    best_len = urows[r].size();
                }
            }
            if (best < 0) throw std::logic_error("singular basis in lu factorisation");
            int pc = -1;
            std::size_t pc_len = 0;
            for (const auto& [c, v] : urows[best]) {
                if (col_done[c] || v.is_zero()) continue;
                if (pc < 0 || colrows[c].size() < pc_len) {
                    pc = c;
                    pc_len = colrows[c].size();
                }
            }
            if (pc < 0) throw std::logic_error("singular basis in lu factorisation");
            pivot_row[step] = best;
            pivot_col[step] = pc;
            const Rational piv = urows[best].at(pc);
            std::vector<int> hit(colrows[pc].begin(), colrows[pc].end());
            for (int r2 : hit) {
                if (r2 == best || row_done[r2]) continue;
                auto it = urows[r2].find(pc);
                if (it == urows[r2].end() || it->second.is_zero()) continue;
                Rational mult = it->second / piv;
                for (const auto& [c, v] : urows[best]) {
                    if (c == pc) continue;
                    auto jt = urows[r2].find(c);
                    if (jt == urows[r2].end()) {
                        urows[r2][c] = -mult * v;
                        colrows[c].insert(r2);
                    } else {
                        jt->second -= mult * v;
                        if (jt->second.is_zero()) {
                            urows[r2].erase(jt);
                            colrows[c].erase(r2);
                        }
                    }
                }
                urows[r2].erase(pc);
                colrows[pc].erase(r2);
                ops.push_back({r2, best, std::move(mult)});
            }
            row_done[best] = true;
            col_done[pc] = true;
        }
    }

    // Solve B x = b; x indexed by basis position.
    std::vector<Rational> solve(std::vector<Rational> b) const {
        for (const auto& op : ops)
            if (!b[op.pivot].is_zero()) b[op.target] -= op.mult * b[op.pivot];
        std::vector<Rational> x(m, Rational(0));
        for (int step = m - 1; step >= 0; --step) {
            int r = pivot_row[step], c = pivot_col[step];
            Rational acc = b[r];
            for (const auto& [cc, v] : urows[r])
                if (cc != c && !x[cc].is_zero()) acc -= v * x[cc];
            x[c] = acc / urows[r].at(c);
        }
        return x;
    }

    // Solve B^T y = c; c indexed by basis position, y by row id.
    std::vector<Rational> solve_transposed(const std::vector<Rational>& c) const {
        std::vector<Rational> acc(m), z(m, Rational(0));
        for (int i = 0; i < m; ++i) acc[i] = c[i];
        for (int step = 0; step < m; ++step) {
            int r = pivot_row[step], pc = pivot_col[step];
            z[r] = acc[pc] / urows[r].at(pc);
            if (z[r].is_zero()) continue;
            for (const auto& [cc, v] : urows[r])
                if (cc != pc) acc[cc] -= v * z[r];
        }
        for (auto it = ops.rbegin(); it != ops.rend(); ++it)
            if (!z[it->target].is_zero()) z[it->pivot] -= it->mult * z[it->target];
        return z;
    }
};

struct Worker {
    const LpProblem& lp;
    int m, n;                       // rows, real columns
    int total;                      // real + artificial columns
    std::vector<std::vector<std::pair<int, Rational>>> col;  // all columns
    std::vector<int> basis;         // size m, column index per basis position
    std::vector<bool> is_basic;
    long iterations = 0;

    explicit Worker(const LpProblem& p) : lp(p), m(p.rows), n(p.num_cols()) {
        total = n + m;
        col = p.cols;
        col.resize(total);
        for (int i = 0; i < m; ++i)
            col[n + i] = {{i, Rational(lp.rhs[i].sign() >= 0 ? 1 : -1)}};
        basis.resize(m);
        is_basic.assign(total, false);
        for (int i = 0; i < m; ++i) {
            basis[i] = n + i;
            is_basic[n + i] = true;
        }
    }

    Rational dot_col(const std::vector<Rational>& y, int j) const {
        Rational s = 0;
        for (const auto& [r, v] : col[j])
            if (!y[r].is_zero()) s += y[r] * v;
        return s;
    }

    void reset_to_artificial() {
        is_basic.assign(total, false);
        for (int i = 0; i < m; ++i) {
            basis[i] = n + i;
            is_basic[n + i] = true;
        }
    }

    // Exact screen of the current basis: 0 = unusable (singular or primal
    // infeasible), 1 = feasible with all artificials at zero, 2 = feasible
    // for the phase-one problem with some artificial still positive.
    int exact_screen() {
        try {
            SparseLU lu;
            std::vector<std::vector<std::pair<int, Rational>>> bcols(m);
            for (int i = 0; i < m; ++i) bcols[i] = col[basis[i]];
            lu.factor(m, bcols);
            xb = lu.solve(lp.rhs);
        } catch (const std::logic_error&) {
            lp_log("lp: exact screen: candidate basis singular (m=%ld)\n", (long)m, 0L);
            screen_singular = true;
            return 0;
        }
        screen_singular = false;
        long negatives = 0;
        for (const auto& v : xb)
            if (v.sign() < 0) ++negatives;
        if (negatives > 0) {
            lp_log("lp: exact screen: %ld of %ld basic values negative\n", negatives,
                   (long)m);
            return 0;
        }
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n && xb[i].sign() > 0) return 2;
        return 1;
    }

    bool screen_singular = false;

    // The float presolve can land on a basis whose exact basic solution has
    // a few negative entries (degenerate vertex, values below float noise).
    // Patch it with one extra artificial column a0 = -(sum of the basis
    // columns at the negative positions): swapping a0 in at the most negative
    // position makes the basis primal feasible by construction, and the
    // ordinary phase one then drives a0 back to zero from this warm start.
    // Requires xb from a preceding exact_screen on a nonsingular basis.
    bool patch_single_artificial() {
        std::vector<int> neg;
        int worst = -1;
        for (int i = 0; i < m; ++i)
            if (xb[i].sign() < 0) {
                neg.push_back(i);
                if (worst < 0 || xb[i] < xb[worst]) worst = i;
            }
        if (neg.empty()) return false;
        std::map<int, Rational> acc;
        for (int i : neg)
            for (const auto& [r, v] : col[basis[i]]) acc[r] -= v;
        std::vector<std::pair<int, Rational>> a0;
        for (auto& [r, v] : acc)
            if (!v.is_zero()) a0.emplace_back(r, std::move(v));
        if (a0.empty()) return false;
        const int idx = total;
        col.push_back(std::move(a0));
        is_basic.push_back(false);
        ++total;
        is_basic[basis[worst]] = false;
        basis[worst] = idx;
        is_basic[idx] = true;
        lp_log("lp: patched %ld negative basic values with one artificial\n",
               (long)neg.size(), 0L);
        return true;
    }

    // Double-precision revised simplex (dense basis inverse) used only to
    // guess a good basis on large instances; every verdict is re-derived in
    // exact arithmetic afterwards, so this can be sloppy but never wrong.
    void float_presolve() {
        const double eps_red = 1e-7, eps_piv = 1e-9;
        const long cap = 60L * m + 20000;
        std::vector<std::vector<std::pair<int, double>>> fcol(total);
        for (int j = 0; j < total; ++j)
            for (const auto& [r, v] : col[j])
                fcol[j].emplace_back(r, v.convert_to<double>());
        std::vector<double> frhs(m);
        for (int i = 0; i < m; ++i) frhs[i] = lp.rhs[i].convert_to<double>();

        // Tiny deterministic right-hand-side perturbation: degenerate bases
        // (plenty of them in shift-consistency rows) otherwise stall the
        // pricing rule for tens of thousands of zero-step pivots.  The true
        // rhs is restored afterwards and primal feasibility is repaired by a
        // short dual-simplex pass before the basis is handed to the exact
        // screen.
        std::vector<double> true_frhs = frhs;
        for (int i = 0; i < m; ++i) {
            std::uint64_t z = (static_cast<std::uint64_t>(i) + 0x9e3779b97f4a7c15ull) *
                              0xbf58476d1ce4e5b9ull;
            z ^= z >> 31;
            double u = 1.0 + static_cast<double>(z >> 11) * 0x1.0p-53;  // [1, 2)
            frhs[i] += u * 1e-8 * std::max(1.0, std::abs(frhs[i]));
        }

        std::vector<double> binv(static_cast<std::size_t>(m) * m, 0.0);
        std::vector<double> xb(m), y(m), cb(m);
        for (int i = 0; i < m; ++i) {
            double s = fcol[n + i][0].second;
            binv[static_cast<std::size_t>(i) * m + i] = s;
            xb[i] = s * frhs[i];
        }
        std::vector<double> fcost(total, 0.0);

        auto refresh = [&]() {
            for (int i = 0; i < m; ++i) {
                double acc = 0;
                const double* row = &binv[static_cast<std::size_t>(i) * m];
                for (int r = 0; r < m; ++r) acc += row[r] * frhs[r];
                xb[i] = acc;
            }
            std::fill(y.begin(), y.end(), 0.0);
            for (int i = 0; i < m; ++i) {
                if (cb[i] == 0.0) continue;
                const double* row = &binv[static_cast<std::size_t>(i) * m];
                for (int r = 0; r < m; ++r) y[r] += cb[i] * row[r];
            }
        };

        long spent = 0;
        // Devex reference weights: Dantzig pricing zigzags for ~m^2 pivots on
        // this row structure, Devex keeps the pivot count near O(m).
        std::vector<double> devex(total, 1.0);
        for (int phase = 1; phase <= 2; ++phase) {
            if (phase == 1) {
                std::fill(fcost.begin(), fcost.end(), 0.0);
                for (int i = 0; i < m; ++i) fcost[n + i] = -1.0;
            } else {
                std::fill(fcost.begin(), fcost.end(), 0.0);
                for (int j = 0; j < n; ++j) fcost[j] = lp.obj[j].convert_to<double>();
            }
            for (int i = 0; i < m; ++i) cb[i] = fcost[basis[i]];
            refresh();
            std::fill(devex.begin(), devex.end(), 1.0);
            while (spent++ < cap) {
                int enter = -1;
                double best_score = 0, enter_red = 0;
                for (int j = 0; j < total; ++j) {
                    if (is_basic[j]) continue;
                    if (phase == 2 && j >= n) continue;
                    double red = fcost[j];
                    for (const auto& [r, v] : fcol[j]) red -= y[r] * v;
                    if (red <= eps_red) continue;
                    double score = red * red / devex[j];
                    if (enter < 0 || score > best_score) {
                        best_score = score;
                        enter = j;
                        enter_red = red;
                    }
                }
                if (enter < 0) break;
                std::vector<double> w(m, 0.0);
                for (const auto& [r, v] : fcol[enter])
                    for (int i = 0; i < m; ++i)
                        w[i] += binv[static_cast<std::size_t>(i) * m + r] * v;
                int leave = -1;
                double ratio = 0;
                for (int i = 0; i < m; ++i) {
                    if (w[i] <= eps_piv) continue;
                    double r = xb[i] / w[i];
                    if (leave < 0 || r < ratio - 1e-12 ||
                        (r < ratio + 1e-12 && w[i] > w[leave]))
                    {
                        leave = i;
                        ratio = r;
                    }
                }
                if (leave < 0) break;  // unbounded direction; exact pass decides
                double piv = w[leave];
                double* lrow = &binv[static_cast<std::size_t>(leave) * m];
                // Devex update against the pivot row, before it is rescaled.
                const double wq = devex[enter];
                if (wq > 1e10) {
                    std::fill(devex.begin(), devex.end(), 1.0);
                } else {
                    const double inv_piv2 = 1.0 / (piv * piv);
                    for (int j = 0; j < total; ++j) {
                        if (is_basic[j] || j == enter) continue;
                        if (phase == 2 && j >= n) continue;
                        double alpha = 0;
                        for (const auto& [r, v] : fcol[j]) alpha += lrow[r] * v;
                        double cand = alpha * alpha * inv_piv2 * wq;
                        if (cand > devex[j]) devex[j] = cand;
                    }
                    devex[basis[leave]] = std::max(wq * inv_piv2, 1.0);
                }
                double step = enter_red / piv;
                for (int r = 0; r < m; ++r) y[r] += step * lrow[r];
                for (int r = 0; r < m; ++r) lrow[r] /= piv;
                for (int i = 0; i < m; ++i) {
                    if (i == leave || w[i] == 0.0) continue;
                    double f = w[i];
                    double* row = &binv[static_cast<std::size_t>(i) * m];
                    for (int r = 0; r < m; ++r) row[r] -= f * lrow[r];
                }
                double theta = ratio;
                for (int i = 0; i < m; ++i) xb[i] -= theta * w[i];
                xb[leave] = theta;
                is_basic[basis[leave]] = false;
                basis[leave] = enter;
                is_basic[enter] = true;
                cb[leave] = fcost[enter];
                if (spent % 256 == 0) refresh();
                if (spent % 2000 == 0) lp_log("lp: float iteration %ld (phase %ld)\n", spent, phase);
            }
            if (phase == 1) {
                double infeas = 0;
                for (int i = 0; i < m; ++i)
                    if (basis[i] >= n) infeas += std::max(xb[i], 0.0);
                if (infeas > 1e-6) return;  // looks infeasible; hand basis over
            }
        }

        // Swap remaining zero-level artificial basics for real columns with
        // degenerate pivots: every artificial handed to the exact phase costs
        // an exact pivot there, which is orders of magnitude pricier.
        {
            long cleaned = 0, stuck = 0;
            for (int i = 0; i < m; ++i) {
                if (basis[i] < n) continue;
                const double* lrow = &binv[static_cast<std::size_t>(i) * m];
                int enter = -1;
                double best = 1e-6;  // healthy pivot, the swap must stay nonsingular
                for (int j = 0; j < n; ++j) {
                    if (is_basic[j]) continue;
                    double alpha = 0;
                    for (const auto& [r, v] : fcol[j]) alpha += lrow[r] * v;
                    if (std::abs(alpha) > best) {
                        best = std::abs(alpha);
                        enter = j;
                    }
                }
                if (enter < 0) {
                    ++stuck;
                    continue;
                }
                std::vector<double> w(m, 0.0);
                for (const auto& [r, v] : fcol[enter])
                    for (int k = 0; k < m; ++k)
                        w[k] += binv[static_cast<std::size_t>(k) * m + r] * v;
                double piv = w[i];
                double* mrow = &binv[static_cast<std::size_t>(i) * m];
                double step = 0;
                {
                    double red = fcost[enter];
                    for (const auto& [r, v] : fcol[enter]) red -= y[r] * v;
                    step = red / piv;
                }
                for (int r = 0; r < m; ++r) y[r] += step * mrow[r];
                for (int r = 0; r < m; ++r) mrow[r] /= piv;
                for (int k = 0; k < m; ++k) {
                    if (k == i || w[k] == 0.0) continue;
                    double f = w[k];
                    double* row = &binv[static_cast<std::size_t>(k) * m];
                    for (int r = 0; r < m; ++r) row[r] -= f * mrow[r];
                }
                double theta = xb[i] / piv;
                for (int k = 0; k < m; ++k) xb[k] -= theta * w[k];
                xb[i] = theta;
                is_basic[basis[i]] = false;
                basis[i] = enter;
                is_basic[enter] = true;
                cb[i] = fcost[enter];
                ++cleaned;
            }
            if (cleaned + stuck > 0)
                lp_log("lp: swapped %ld zero-level artificials out (%ld stuck)\n", cleaned,
                       stuck);
        }

        // Restore the true right-hand side and repair primal feasibility with
        // dual-simplex pivots.  The perturbed-optimal basis keeps its duals
        // when only the rhs changes, so a handful of pivots suffices.
        frhs = true_frhs;
        refresh();
        for (long rep = 0; rep < 4L * m + 64; ++rep) {
            int leave = -1;
            double worst = -1e-9;
            for (int i = 0; i < m; ++i)
                if (xb[i] < worst) {
                    worst = xb[i];
                    leave = i;
                }
            if (leave < 0) break;
            const double* lrow = &binv[static_cast<std::size_t>(leave) * m];
            int enter = -1;
            double best_ratio = 0, enter_alpha = 0, enter_red = 0;
            for (int j = 0; j < n; ++j) {
                if (is_basic[j]) continue;
                double alpha = 0;
                for (const auto& [r, v] : fcol[j]) alpha += lrow[r] * v;
                if (alpha >= -eps_piv) continue;
                double red = fcost[j];
                for (const auto& [r, v] : fcol[j]) red -= y[r] * v;
                double ratio = red / alpha;  // >= 0 up to noise
                if (enter < 0 || ratio > best_ratio ||
                    (ratio > best_ratio - 1e-12 && alpha < enter_alpha))
                {
                    enter = j;
                    best_ratio = ratio;
                    enter_alpha = alpha;
                    enter_red = red;
                }
            }
            if (enter < 0) break;  // looks infeasible; the exact pass decides
            std::vector<double> w(m, 0.0);
            for (const auto& [r, v] : fcol[enter])
                for (int i = 0; i < m; ++i)
                    w[i] += binv[static_cast<std::size_t>(i) * m + r] * v;
            double piv = w[leave];
            if (std::abs(piv) <= eps_piv) break;
            double* mrow = &binv[static_cast<std::size_t>(leave) * m];
            double step = enter_red / piv;
            for (int r = 0; r < m; ++r) y[r] += step * mrow[r];
            for (int r = 0; r < m; ++r) mrow[r] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave || w[i] == 0.0) continue;
                double f = w[i];
                double* row = &binv[static_cast<std::size_t>(i) * m];
                for (int r = 0; r < m; ++r) row[r] -= f * mrow[r];
            }
            double theta = xb[leave] / piv;
            for (int i = 0; i < m; ++i) xb[i] -= theta * w[i];
            xb[leave] = theta;
            is_basic[basis[leave]] = false;
            basis[leave] = enter;
            is_basic[enter] = true;
            cb[leave] = fcost[enter];
            if ((rep & 255) == 255) refresh();
            if ((rep % 500) == 499) lp_log("lp: dual repair pivot %ld (of cap %ld)\n",
                                           rep + 1, 4L * m + 64);
        }
    }

    // Run primal simplex on the given objective from the current (primal
    // feasible) basis.  Returns false when the objective is unbounded, in
    // which case `ray_col`/`ray_dir` describe the recession direction.
    int ray_col = -1;
    std::vector<Rational> ray_dir;
    std::vector<Rational> xb, duals;

    bool optimise(const std::vector<Rational>& cost, bool allow_artificial) {
        long degenerate_run = 0;
        const long stall_limit = 4L * m + 64;
        bool bland = false;
        SparseLU lu;
        std::vector<std::vector<std::pair<int, Rational>>> bcols(m);
        std::vector<Rational> cb(m);

        // Product-form updates: the working basis is (refactored basis)
        // times E_1 ... E_k, each eta being the identity with column `pos`
        // replaced by `vec`.  Refactoring every pivot would dominate the
        // runtime on large instances.
        struct Eta {
            int pos;
            std::vector<Rational> vec;
        };
        std::vector<Eta> etas;
        const std::size_t refactor_every = 48;
        auto refactor = [&]() {
            for (int i = 0; i < m; ++i) bcols[i] = col[basis[i]];
            lu.factor(m, bcols);
            etas.clear();
            xb = lu.solve(lp.rhs);
        };
        auto fsolve = [&](std::vector<Rational> v) {
            v = lu.solve(std::move(v));
            for (const auto& e : etas) {
                Rational zp = v[e.pos] / e.vec[e.pos];
                if (!zp.is_zero())
                    for (int i = 0; i < m; ++i) {
                        if (i == e.pos || e.vec[i].is_zero()) continue;
                        v[i] -= e.vec[i] * zp;
                    }
                v[e.pos] = std::move(zp);
            }
            return v;
        };
        auto btsolve = [&](std::vector<Rational> v) {
            for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
                Rational acc = v[it->pos];
                for (int i = 0; i < m; ++i) {
                    if (i == it->pos || it->vec[i].is_zero() || v[i].is_zero()) continue;
                    acc -= it->vec[i] * v[i];
                }
                v[it->pos] = acc / it->vec[it->pos];
            }
            return lu.solve_transposed(std::move(v));
        };

        refactor();
        int scan_from = 0;  // rotating start for partial pricing
        for (;;) {
            for (int i = 0; i < m; ++i) cb[i] = cost[basis[i]];
            duals = btsolve(cb);
            int enter = -1;
            Rational best_red = 0;
            if (bland) {
                for (int j = 0; j < total; ++j) {
                    if (is_basic[j]) continue;
                    if (!allow_artificial && j >= n) continue;
                    Rational red = cost[j] - dot_col(duals, j);
                    if (red.sign() > 0) {
                        enter = j;
                        break;
                    }
                }
            } else {
                // Partial pricing: sweep from a rotating start and settle for
                // the best candidate of the first window that contains an
                // improving column; fall through to a full sweep otherwise.
                const int window = std::max(2048, total / 8);
                int seen_since_hit = -1;
                for (int step = 0; step < total; ++step) {
                    int j = scan_from + step;
                    if (j >= total) j -= total;
                    if (seen_since_hit >= 0 && ++seen_since_hit > window) break;
                    if (is_basic[j]) continue;
                    if (!allow_artificial && j >= n) continue;
                    Rational red = cost[j] - dot_col(duals, j);
                    if (red.sign() <= 0) continue;
                    if (enter < 0 || red > best_red) {
                        enter = j;
                        best_red = red;
                    }
                    if (seen_since_hit < 0) seen_since_hit = 0;
                }
                if (enter >= 0) {
                    scan_from = enter + 1 == total ? 0 : enter + 1;
                }
            }
            if (enter < 0) return true;
            std::vector<Rational> dense_col(m, Rational(0));
            for (const auto& [r, v] : col[enter]) dense_col[r] = v;
            std::vector<Rational> w = fsolve(std::move(dense_col));
            int leave = -1;
            Rational ratio = 0;
            for (int i = 0; i < m; ++i) {
                Rational r;
                if (w[i].sign() > 0) {
                    r = xb[i] / w[i];
                } else if (!allow_artificial && basis[i] >= n && w[i].sign() != 0 &&
                           xb[i].is_zero()) {
                    // a zero-level artificial must never move off zero
                    r = 0;
                } else {
                    continue;
                }
                if (leave < 0 || r < ratio || (r == ratio && basis[i] < basis[leave])) {
                    leave = i;
                    ratio = r;
                }
            }
            if (leave < 0) {
                ray_col = enter;
                ray_dir = w;
                return false;
            }
            if (ratio.is_zero()) {
                if (++degenerate_run > stall_limit) bland = true;
            } else {
                degenerate_run = 0;
            }
            if (!ratio.is_zero())
                for (int i = 0; i < m; ++i) {
                    if (i == leave || w[i].is_zero()) continue;
                    xb[i] -= ratio * w[i];
                }
            xb[leave] = ratio;
            is_basic[basis[leave]] = false;
            basis[leave] = enter;
            is_basic[enter] = true;
            etas.push_back(Eta{leave, std::move(w)});
            if (etas.size() >= refactor_every) refactor();
            ++iterations;
            if (iterations % 50 == 0) lp_log("lp: exact iteration %ld (m=%ld)\n", iterations, m);
        }
    }
};

}  // namespace

LpSolution solve_lp(const LpProblem& lp) {
    if (static_cast<int>(lp.rhs.size()) != lp.rows)
        throw std::invalid_argument("lp rhs size does not match row count");
    LpSolution sol;
    const int n = lp.num_cols();
    if (lp.rows == 0) {
        for (int j = 0; j < n; ++j)
            if (lp.obj[j].sign() > 0) {
                sol.status = LpStatus::Unbounded;
                sol.x.assign(n, Rational(0));
                sol.ray.assign(n, Rational(0));
                sol.ray[j] = 1;
                return sol;
            }
        sol.status = LpStatus::Optimal;
        sol.x.assign(n, Rational(0));
        sol.dual.clear();
        sol.value = 0;
        return sol;
    }

    Worker w(lp);
    bool skip_phase1 = false;
    if (w.total > 1500 || w.m > 250) {
        w.float_presolve();
        lp_log("lp: float presolve done (%ld cols, %ld rows)\n", w.total, w.m);
        int screen = w.exact_screen();
        lp_log("lp: exact screen verdict %ld (1 skips phase one)\n", screen, 0L);
        if (screen == 0 && !w.screen_singular && w.patch_single_artificial()) {
            screen = w.exact_screen();
            lp_log("lp: exact screen after artificial patch: verdict %ld\n", screen, 0L);
        }
        if (screen == 0)
            w.reset_to_artificial();
        else if (screen == 1)
            skip_phase1 = true;  // exact feasible point in hand, no artificials active
    }
    Rational infeas = 0;
    if (!skip_phase1) {
        std::vector<Rational> phase1(w.total, Rational(0));
        for (int j = n; j < w.total; ++j) phase1[j] = -1;  // includes any patch column
        // Artificials never need to re-enter in phase one (they cannot lower
        // the minimal infeasibility), and barring them also pins zero-level
        // artificial basics, which stops long degenerate shuffles.
        if (!w.optimise(phase1, false)) throw std::logic_error("phase one cannot be unbounded");
        lp_log("lp: exact phase one done at iteration %ld (m=%ld)\n", w.iterations, w.m);
        for (int i = 0; i < w.m; ++i)
            if (w.basis[i] >= n) infeas += w.xb[i];
    }
    if (infeas.sign() > 0) {
        // Farkas: phase-one duals satisfy y.a_j >= 0 for every real column
        // and y.rhs = -(minimal infeasibility) < 0.
        sol.status = LpStatus::Infeasible;
        sol.dual = w.duals;
        sol.iterations = w.iterations;
        return sol;
    }

    std::vector<Rational> phase2(w.total, Rational(0));
    for (int j = 0; j < n; ++j) phase2[j] = lp.obj[j];
    bool bounded = w.optimise(phase2, false);
    sol.iterations = w.iterations;
    sol.x.assign(n, Rational(0));
    for (int i = 0; i < w.m; ++i)
        if (w.basis[i] < n) sol.x[w.basis[i]] = w.xb[i];
    if (!bounded) {
        sol.status = LpStatus::Unbounded;
        sol.ray.assign(n, Rational(0));
        sol.ray[w.ray_col] = 1;
        for (int i = 0; i < w.m; ++i)
            if (w.basis[i] < n) sol.ray[w.basis[i]] = -w.ray_dir[i];
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.dual = w.duals;
    sol.value = 0;
    for (int j = 0; j < n; ++j)
        if (!sol.x[j].is_zero()) sol.value += lp.obj[j] * sol.x[j];
    return sol;
}

bool verify_solution(const LpProblem& lp, const LpSolution& sol) {
    const int n = lp.num_cols();
    auto primal_feasible = [&](const std::vector<Rational>& x, const std::vector<Rational>& target) {
        if (static_cast<int>(x.size()) != n) return false;
        for (const auto& v : x)
            if (v.sign() < 0) return false;
        std::vector<Rational> ax(lp.rows, Rational(0));
        for (int j = 0; j < n; ++j) {
            if (x[j].is_zero()) continue;
            for (const auto& [r, v] : lp.cols[j]) ax[r] += v * x[j];
        }
        return ax == target;
    };
    auto dual_dot_col = [&](const std::vector<Rational>& y, int j) {
        Rational s = 0;
        for (const auto& [r, v] : lp.cols[j]) s += y[r] * v;
        return s;
    };
    switch (sol.status) {
        case LpStatus::Optimal: {
            if (lp.rows == 0) {
                if (!primal_feasible(sol.x, {})) return false;
                Rational val = 0;
                for (int j = 0; j < n; ++j) val += lp.obj[j] * sol.x[j];
                return val == sol.value;
            }
            if (!primal_feasible(sol.x, lp.rhs)) return false;
            if (static_cast<int>(sol.dual.size()) != lp.rows) return false;
            for (int j = 0; j < n; ++j)
                if (dual_dot_col(sol.dual, j) < lp.obj[j]) return false;
            Rational primal = 0, dual_val = 0;
            for (int j = 0; j < n; ++j) primal += lp.obj[j] * sol.x[j];
            for (int r = 0; r < lp.rows; ++r) dual_val += sol.dual[r] * lp.rhs[r];
            return primal == sol.value && dual_val == sol.value;
        }
        case LpStatus::Infeasible: {
            if (static_cast<int>(sol.dual.size()) != lp.rows) return false;
            for (int j = 0; j < n; ++j)
                if (dual_dot_col(sol.dual, j).sign() < 0) return false;
            Rational yb = 0;
            for (int r = 0; r < lp.rows; ++r) yb += sol.dual[r] * lp.rhs[r];
            return yb.sign() < 0;
        }
        case LpStatus::Unbounded: {
            std::vector<Rational> target = lp.rhs;
            if (!primal_feasible(sol.x, target)) return false;
            if (static_cast<int>(sol.ray.size()) != n) return false;
            for (const auto& v : sol.ray)
                if (v.sign() < 0) return false;
            std::vector<Rational> ar(lp.rows, Rational(0));
            Rational gain = 0;
            for (int j = 0; j < n; ++j) {
                if (sol.ray[j].is_zero()) continue;
                gain += lp.obj[j] * sol.ray[j];
                for (const auto& [r, v] : lp.cols[j]) ar[r] += v * sol.ray[j];
            }
            for (const auto& v : ar)
                if (!v.is_zero()) return false;
            return gain.sign() > 0;
        }
    }
    return false;
}

}  // namespace cberlab
