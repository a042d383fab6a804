#include "varrob/lp.hpp"

#include <algorithm>
#include <cstring>

namespace varrob {

namespace {

// Internal computational form: minimize c z subject to T z = b, 0 <= z <= U
// (U may be infinite), built from the user model by shifting/mirroring/
// splitting variables and normalizing rows to nonnegative rhs. One anchor
// column (slack or artificial) per row provides the starting identity
// basis, and keeping those columns in the tableau makes B^{-1} available
// for dual recovery.
struct Standardizer {
    // per internal structural var: original var, multiplier, and whether
    // the original contribution is base + mult * z
    struct Map {
        int orig = -1;
        double mult = 1.0;
    };

    int m = 0;        // rows
    int ns = 0;       // structural internal vars
    int ncols = 0;    // structural + slacks/surplus + artificials
    std::vector<Map> maps;
    Vec base;         // per original var
    Vec cost;         // internal phase-2 costs (minimization)
    Vec upper;        // internal upper bounds
    std::vector<double> tab; // m x ncols, row-major (original data, pre-pivot)
    Vec rhs;          // normalized rhs >= 0
    Vec row_mult;     // +-1 applied to each original row
    std::vector<int> anchor;      // anchor column per row
    std::vector<char> artificial; // per column
    double obj_sign = 1.0;        // +1 min, -1 max
    double obj_const = 0.0;

    explicit Standardizer(const LinearProgram& lp) {
        const int n_orig = static_cast<int>(lp.vars.size());
        m = static_cast<int>(lp.rows.size());
        obj_sign = lp.sense == LinearProgram::Sense::Max ? -1.0 : 1.0;
        base.assign(n_orig, 0.0);
        std::vector<std::vector<Map>> per_orig(n_orig);

        for (int j = 0; j < n_orig; ++j) {
            const auto& v = lp.vars[j];
            bool lb_inf = v.lb == -kInf;
            bool ub_inf = v.ub == kInf;
            if (!lb_inf) {
                base[j] = v.lb;
                maps.push_back({j, 1.0});
                upper.push_back(ub_inf ? kInf : v.ub - v.lb);
                per_orig[j] = {maps.back()};
            } else if (!ub_inf) {
                base[j] = v.ub;
                maps.push_back({j, -1.0});
                upper.push_back(kInf);
                per_orig[j] = {maps.back()};
            } else {
                maps.push_back({j, 1.0});
                upper.push_back(kInf);
                maps.push_back({j, -1.0});
                upper.push_back(kInf);
                per_orig[j] = {maps[maps.size() - 2], maps.back()};
            }
        }
        ns = static_cast<int>(maps.size());

        // Objective over internal vars plus the constant from the shifts.
        cost.assign(ns, 0.0);
        for (int i = 0; i < ns; ++i)
            cost[i] = obj_sign * lp.vars[maps[i].orig].obj * maps[i].mult;
        for (int j = 0; j < n_orig; ++j) obj_const += obj_sign * lp.vars[j].obj * base[j];

        // Rows: substitute, normalize rhs sign, then append anchor columns.
        std::vector<Vec> dense_rows(m, Vec(ns, 0.0));
        rhs.assign(m, 0.0);
        row_mult.assign(m, 1.0);
        std::vector<char> senses(m);
        std::vector<int> first_internal(n_orig, -1);
        {
            int k = 0;
            for (int j = 0; j < n_orig; ++j) {
                first_internal[j] = k;
                k += static_cast<int>(per_orig[j].size());
            }
        }
        for (int r = 0; r < m; ++r) {
            const auto& row = lp.rows[r];
            double b = row.rhs;
            for (auto [j, a] : row.coeffs) {
                b -= a * base[j];
                int k = first_internal[j];
                dense_rows[r][k] += a * maps[k].mult;
                if (k + 1 < ns && maps[k + 1].orig == j)
                    dense_rows[r][k + 1] += a * maps[k + 1].mult;
            }
            char s = row.sense;
            if (b < 0.0) {
                for (double& x : dense_rows[r]) x = -x;
                b = -b;
                s = s == 'L' ? 'G' : (s == 'G' ? 'L' : 'E');
                row_mult[r] = -1.0;
            }
            rhs[r] = b;
            senses[r] = s;
        }

        // Count extra columns: slack per L, surplus+artificial per G,
        // artificial per E.
        int extra = 0;
        for (int r = 0; r < m; ++r) extra += senses[r] == 'G' ? 2 : 1;
        ncols = ns + extra;
        tab.assign(static_cast<std::size_t>(m) * ncols, 0.0);
        for (int r = 0; r < m; ++r)
            std::memcpy(&tab[static_cast<std::size_t>(r) * ncols], dense_rows[r].data(),
                        sizeof(double) * ns);
        artificial.assign(ncols, 0);
        anchor.assign(m, -1);
        cost.resize(ncols, 0.0);
        upper.resize(ncols, kInf);
        int col = ns;
        for (int r = 0; r < m; ++r) {
            switch (senses[r]) {
                case 'L':
                    tab[static_cast<std::size_t>(r) * ncols + col] = 1.0;
                    anchor[r] = col;
                    ++col;
                    break;
                case 'G':
                    tab[static_cast<std::size_t>(r) * ncols + col] = -1.0; // surplus
                    ++col;
                    tab[static_cast<std::size_t>(r) * ncols + col] = 1.0; // artificial
                    artificial[col] = 1;
                    anchor[r] = col;
                    ++col;
                    break;
                case 'E':
                    tab[static_cast<std::size_t>(r) * ncols + col] = 1.0;
                    artificial[col] = 1;
                    anchor[r] = col;
                    ++col;
                    break;
            }
        }
    }
};

struct Tableau {
    int m, ncols;
    std::vector<double> t; // m x ncols working copy
    Vec bval;              // current basic values
    Vec objrow;            // reduced costs
    std::vector<int> basis;
    std::vector<char> at_upper;
    Vec upper;

    double* row(int r) { return &t[static_cast<std::size_t>(r) * ncols]; }
    const double* row(int r) const { return &t[static_cast<std::size_t>(r) * ncols]; }
};

constexpr double kPivTol = 1e-10;

// Recomputes the reduced-cost row for the given cost vector from the
// current (already pivoted) tableau: obj_j = c_j - sum_i c_basis(i) T_ij.
void reset_objrow(Tableau& tb, const Vec& cost) {
    tb.objrow = cost;
    for (int i = 0; i < tb.m; ++i) {
        double cb = cost[tb.basis[i]];
        if (cb == 0.0) continue;
        const double* ri = tb.row(i);
        for (int j = 0; j < tb.ncols; ++j) tb.objrow[j] -= cb * ri[j];
    }
}

enum class PivotOutcome { Optimal, Unbounded, IterLimit };

PivotOutcome run_phase(Tableau& tb, const Vec& cost, const std::vector<char>& frozen,
                       int max_iters, int* iters_used, bool bland) {
    reset_objrow(tb, cost);
    const double rtol = 1e-9;
    int degenerate_streak = 0;
    std::vector<char> is_basic(tb.ncols, 0);
    for (int i = 0; i < tb.m; ++i) is_basic[tb.basis[i]] = 1;
    for (int iter = 0; iter < max_iters; ++iter) {
        // Entering variable: Dantzig by default, Bland once degeneracy
        // stalls progress.
        int enter = -1;
        double best_score = rtol;
        for (int j = 0; j < tb.ncols; ++j) {
            if (frozen[j] || is_basic[j]) continue;
            double d = tb.objrow[j];
            double score;
            if (!tb.at_upper[j] && d < -rtol)
                score = -d;
            else if (tb.at_upper[j] && d > rtol)
                score = d;
            else
                continue;
            if (bland) {
                enter = j;
                break;
            }
            if (score > best_score) {
                best_score = score;
                enter = j;
            }
        }
        if (enter == -1) {
            *iters_used = iter;
            return PivotOutcome::Optimal;
        }

        double dir = tb.at_upper[enter] ? -1.0 : 1.0;
        // Ratio test, two passes: exact minimum first, then a
        // deterministic leaving choice (smallest basis variable index)
        // among the rows within tolerance of it.
        double t_max = tb.upper[enter]; // own bound-flip distance
        for (int i = 0; i < tb.m; ++i) {
            double alpha = dir * tb.row(i)[enter];
            if (alpha > kPivTol) {
                t_max = std::min(t_max, tb.bval[i] / alpha);
            } else if (alpha < -kPivTol && tb.upper[tb.basis[i]] != kInf) {
                t_max = std::min(t_max, (tb.upper[tb.basis[i]] - tb.bval[i]) / (-alpha));
            }
        }
        if (t_max == kInf) {
            *iters_used = iter;
            return PivotOutcome::Unbounded;
        }
        t_max = std::max(t_max, 0.0);
        int leave = -1;
        bool leave_at_upper = false;
        for (int i = 0; i < tb.m; ++i) {
            double alpha = dir * tb.row(i)[enter];
            double limit;
            bool to_upper;
            if (alpha > kPivTol) {
                limit = tb.bval[i] / alpha;
                to_upper = false;
            } else if (alpha < -kPivTol && tb.upper[tb.basis[i]] != kInf) {
                limit = (tb.upper[tb.basis[i]] - tb.bval[i]) / (-alpha);
                to_upper = true;
            } else {
                continue;
            }
            if (limit <= t_max + 1e-9) {
                if (leave == -1 || tb.basis[i] < tb.basis[leave]) {
                    leave = i;
                    leave_at_upper = to_upper;
                }
            }
        }
        if (t_max <= 1e-11) {
            if (++degenerate_streak > 200) bland = true;
        } else {
            degenerate_streak = 0;
        }

        if (leave == -1) {
            // Bound flip: entering runs to its other bound.
            for (int i = 0; i < tb.m; ++i) tb.bval[i] -= dir * tb.row(i)[enter] * t_max;
            tb.at_upper[enter] = !tb.at_upper[enter];
            continue;
        }

        // Basis exchange.
        double enter_val = tb.at_upper[enter] ? tb.upper[enter] - t_max : t_max;
        for (int i = 0; i < tb.m; ++i)
            if (i != leave) tb.bval[i] -= dir * tb.row(i)[enter] * t_max;
        int leaving_var = tb.basis[leave];
        tb.at_upper[leaving_var] = leave_at_upper;
        is_basic[leaving_var] = 0;
        tb.basis[leave] = enter;
        tb.at_upper[enter] = false; // basic now
        is_basic[enter] = 1;
        tb.bval[leave] = enter_val;

        double piv = tb.row(leave)[enter];
        double* rl = tb.row(leave);
        double inv = 1.0 / piv;
        for (int j = 0; j < tb.ncols; ++j) rl[j] *= inv;
        rl[enter] = 1.0;
        for (int i = 0; i < tb.m; ++i) {
            if (i == leave) continue;
            double f = tb.row(i)[enter];
            if (f == 0.0) continue;
            double* ri = tb.row(i);
            for (int j = 0; j < tb.ncols; ++j) ri[j] -= f * rl[j];
            ri[enter] = 0.0;
        }
        double f = tb.objrow[enter];
        if (f != 0.0) {
            for (int j = 0; j < tb.ncols; ++j) tb.objrow[j] -= f * rl[j];
            tb.objrow[enter] = 0.0;
        }
    }
    *iters_used = max_iters;
    return PivotOutcome::IterLimit;
}

// Dense LU solve with partial pivoting; returns false on singularity.
bool lu_solve(Mat a, Vec b, Vec* out) {
    int n = a.rows;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(a.at(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a.at(i, k)) > best) {
                best = std::fabs(a.at(i, k));
                piv = i;
            }
        if (best < 1e-12) return false;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = a.at(i, k) / a.at(k, k);
            a.at(i, k) = f;
            for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
        x[i] = s / a.at(i, i);
    }
    *out = std::move(x);
    return true;
}

struct Attempt {
    LpStatus status = LpStatus::NumericalFailure;
    Vec z;      // internal solution
    Vec y;      // internal duals (per normalized row)
    int iters = 0;
    std::string message;
};

Attempt solve_internal(const Standardizer& sd, const SimplexOptions& opts, bool force_bland) {
    Attempt out;
    Tableau tb;
    tb.m = sd.m;
    tb.ncols = sd.ncols;
    tb.t = sd.tab;
    tb.bval = sd.rhs;
    tb.basis = sd.anchor;
    tb.at_upper.assign(sd.ncols, 0);
    tb.upper = sd.upper;

    std::vector<char> frozen(sd.ncols, 0);

    // Phase 1: minimize artificial sum.
    bool need_phase1 = false;
    Vec phase1_cost(sd.ncols, 0.0);
    for (int j = 0; j < sd.ncols; ++j)
        if (sd.artificial[j]) {
            phase1_cost[j] = 1.0;
            need_phase1 = true;
        }
    int it1 = 0, it2 = 0;
    if (need_phase1) {
        PivotOutcome rc = run_phase(tb, phase1_cost, frozen, opts.max_iters, &it1, force_bland);
        if (rc == PivotOutcome::IterLimit) {
            out.status = LpStatus::IterationLimit;
            out.message = "phase 1 iteration limit";
            return out;
        }
        if (rc == PivotOutcome::Unbounded) {
            out.status = LpStatus::NumericalFailure;
            out.message = "phase 1 reported unbounded (numerical breakdown)";
            return out;
        }
        double art_sum = 0.0;
        for (int i = 0; i < tb.m; ++i)
            if (sd.artificial[tb.basis[i]]) art_sum += tb.bval[i];
        if (art_sum > 1e-7) {
            out.status = LpStatus::Infeasible;
            out.iters = it1;
            return out;
        }
        // Fix artificials at zero for phase 2.
        for (int j = 0; j < sd.ncols; ++j)
            if (sd.artificial[j]) {
                tb.upper[j] = 0.0;
                frozen[j] = 1;
            }
        // A basic artificial pinned at ~0 is harmless; freeze only blocks
        // it from re-entering.
    }

    PivotOutcome rc = run_phase(tb, sd.cost, frozen, opts.max_iters, &it2, force_bland);
    out.iters = it1 + it2;
    if (rc == PivotOutcome::IterLimit) {
        out.status = LpStatus::IterationLimit;
        out.message = "phase 2 iteration limit";
        return out;
    }
    if (rc == PivotOutcome::Unbounded) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    // Refine the claimed optimal point from original data: solve
    // B x_B = b - N x_N and B^t y = c_B with a fresh LU, removing the
    // drift accumulated by tableau pivots.
    int m = sd.m;
    Vec z(sd.ncols, 0.0);
    for (int j = 0; j < sd.ncols; ++j)
        if (tb.at_upper[j] && tb.upper[j] != kInf) z[j] = tb.upper[j];
    if (m > 0) {
        Mat bmat(m, m);
        Vec rhs_adj = sd.rhs;
        std::vector<char> in_basis(sd.ncols, 0);
        for (int i = 0; i < m; ++i) in_basis[tb.basis[i]] = 1;
        for (int j = 0; j < sd.ncols; ++j) {
            if (in_basis[j] || z[j] == 0.0) continue;
            for (int i = 0; i < m; ++i)
                rhs_adj[i] -= sd.tab[static_cast<std::size_t>(i) * sd.ncols + j] * z[j];
        }
        for (int i = 0; i < m; ++i)
            for (int r = 0; r < m; ++r)
                bmat.at(r, i) = sd.tab[static_cast<std::size_t>(r) * sd.ncols + tb.basis[i]];
        Vec xb;
        if (!lu_solve(bmat, rhs_adj, &xb)) {
            out.status = LpStatus::NumericalFailure;
            out.message = "singular basis at optimality";
            return out;
        }
        for (int i = 0; i < m; ++i) z[tb.basis[i]] = xb[i];
        // Duals: B^t y = c_B.
        Mat btrans(m, m);
        Vec cb(m, 0.0);
        for (int i = 0; i < m; ++i) {
            cb[i] = sd.cost[tb.basis[i]];
            for (int r = 0; r < m; ++r)
                btrans.at(i, r) = sd.tab[static_cast<std::size_t>(r) * sd.ncols + tb.basis[i]];
        }
        if (!lu_solve(btrans, cb, &out.y)) {
            out.status = LpStatus::NumericalFailure;
            out.message = "singular basis transpose at optimality";
            return out;
        }
    } else {
        out.y.clear();
        // No rows: each variable sits at the bound favored by its cost.
        for (int j = 0; j < sd.ncols; ++j) {
            if (sd.cost[j] < 0.0) {
                if (sd.upper[j] == kInf) {
                    out.status = LpStatus::Unbounded;
                    return out;
                }
                z[j] = sd.upper[j];
            }
        }
    }
    out.z = std::move(z);
    out.status = LpStatus::Optimal;
    return out;
}

} // namespace

SimplexResult simplex_solve(const LinearProgram& lp, const SimplexOptions& opts) {
    lp.validate();
    SimplexResult res;
    if (lp.vars.empty()) {
        res.status = LpStatus::Optimal;
        res.objective = 0.0;
        res.duals.assign(lp.rows.size(), 0.0);
        return res;
    }
    Standardizer sd(lp);

    for (int attempt = 0; attempt < 2; ++attempt) {
        Attempt at = solve_internal(sd, opts, attempt == 1);
        res.iterations += at.iters;
        if (at.status == LpStatus::Infeasible || at.status == LpStatus::Unbounded ||
            at.status == LpStatus::IterationLimit) {
            res.status = at.status;
            res.message = at.message;
            return res;
        }
        if (at.status != LpStatus::Optimal) {
            res.status = at.status;
            res.message = at.message;
            continue;
        }

        // Map back to original variables.
        const int n_orig = static_cast<int>(lp.vars.size());
        Vec x(n_orig, 0.0);
        for (int j = 0; j < n_orig; ++j) x[j] = sd.base[j];
        for (int k = 0; k < sd.ns; ++k)
            x[sd.maps[k].orig] += sd.maps[k].mult * at.z[k];

        // Duals per original row: undo row normalization and sense flip.
        Vec duals(lp.rows.size(), 0.0);
        for (std::size_t r = 0; r < lp.rows.size(); ++r)
            duals[r] = sd.obj_sign * sd.row_mult[r] * (r < at.y.size() ? at.y[r] : 0.0);

        double obj = 0.0;
        for (int j = 0; j < n_orig; ++j) obj += lp.vars[j].obj * x[j];

        // Verification from original data: feasibility, dual feasibility on
        // bounds, and the strong-duality gap.
        bool ok = true;
        std::string why;
        for (std::size_t r = 0; r < lp.rows.size(); ++r) {
            double ax = 0.0;
            for (auto [j, c] : lp.rows[r].coeffs) ax += c * x[j];
            double viol = 0.0;
            if (lp.rows[r].sense == 'L') viol = ax - lp.rows[r].rhs;
            if (lp.rows[r].sense == 'G') viol = lp.rows[r].rhs - ax;
            if (lp.rows[r].sense == 'E') viol = std::fabs(ax - lp.rows[r].rhs);
            if (viol > 1e-7) {
                ok = false;
                why = "primal infeasibility " + std::to_string(viol) + " in row " +
                      lp.rows[r].name;
                break;
            }
        }
        if (ok) {
            // Reduced costs and the bound contributions of the dual
            // objective: gap check at 1e-8 scale.
            Vec red(lp.vars.size(), 0.0);
            for (std::size_t j = 0; j < lp.vars.size(); ++j) red[j] = lp.vars[j].obj;
            for (std::size_t r = 0; r < lp.rows.size(); ++r)
                for (auto [j, c] : lp.rows[r].coeffs) red[j] -= c * duals[r];
            double dual_obj = 0.0;
            for (std::size_t r = 0; r < lp.rows.size(); ++r)
                dual_obj += duals[r] * lp.rows[r].rhs;
            double sgn = lp.sense == LinearProgram::Sense::Max ? -1.0 : 1.0;
            for (std::size_t j = 0; j < lp.vars.size(); ++j) {
                double d = sgn * red[j]; // minimization-normalized reduced cost
                double lb = lp.vars[j].lb, ub = lp.vars[j].ub;
                if (d > 0.0) {
                    if (lb == -kInf) {
                        if (d > 1e-7) {
                            ok = false;
                            why = "dual infeasibility on free/lower-unbounded variable " +
                                  lp.vars[j].name;
                        }
                    } else {
                        dual_obj += sgn * d * lb;
                    }
                } else if (d < 0.0) {
                    if (ub == kInf) {
                        if (d < -1e-7) {
                            ok = false;
                            why = "dual infeasibility on upper-unbounded variable " +
                                  lp.vars[j].name;
                        }
                    } else {
                        dual_obj += sgn * d * ub;
                    }
                }
                if (!ok) break;
            }
            if (ok) {
                double gap = std::fabs(obj - dual_obj);
                if (gap > 1e-8 * std::max(1.0, std::fabs(obj))) {
                    ok = false;
                    why = "duality gap " + std::to_string(gap);
                }
            }
        }
        if (ok) {
            res.status = LpStatus::Optimal;
            res.objective = obj;
            res.x = std::move(x);
            res.duals = std::move(duals);
            return res;
        }
        res.status = LpStatus::NumericalFailure;
        res.message = "optimality verification failed: " + why;
    }
    return res;
}

} // namespace varrob
