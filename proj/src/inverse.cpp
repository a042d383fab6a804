#include "varrob/inverse.hpp"

#include <algorithm>
#include <unordered_set>

namespace varrob {

double l_value(const Instance& inst, const BinVec& x, const BinVec& y,
               const Vec& d_plus, const Vec& d_minus) {
    double v = 0.0;
    const Vec& c = inst.c_hat();
    for (int i = 0; i < inst.n(); ++i) {
        double xi = x[i] ? 1.0 : 0.0, yi = y[i] ? 1.0 : 0.0;
        v += c[i] * (xi - yi);
        v += d_plus[i] * xi * (1.0 - yi);
        v += d_minus[i] * (1.0 - xi) * yi;
    }
    return v;
}

void InverseSpec::check(InverseMode expected) const {
    if (!instance) throw Error("inverse spec: missing instance");
    if (mode != expected) throw Error("inverse spec: built for a different mode");
    if (!instance->is_feasible(x_hat.x))
        throw Error("inverse spec: x_hat is infeasible");
    bool regular = mode == InverseMode::BestRegular || mode == InverseMode::WorstRegular;
    if (regular && !instance->nonnegative_costs())
        throw Error("inverse spec: proportional intervals need c_hat >= 0");
    if (!regular) {
        if (static_cast<int>(cap_plus.size()) != instance->n() ||
            static_cast<int>(cap_minus.size()) != instance->n())
            throw Error("inverse spec: cap vectors must match the ground set");
        for (int i = 0; i < instance->n(); ++i)
            if (cap_plus[i] < 0.0 || cap_minus[i] < 0.0)
                throw Error("inverse spec: caps must be nonnegative");
    }
    bool worst = mode == InverseMode::WorstRegular || mode == InverseMode::WorstGeneral;
    if (worst && eps <= 0.0) throw Error("inverse spec: eps must be > 0");
}

namespace {

// Column view of the feasible-set description and the pieces shared by
// all four masters.
struct PolyView {
    std::vector<std::vector<std::pair<int, double>>> atu; // per element: (row, coef)
    std::vector<double> b;
    std::vector<char> senses;

    explicit PolyView(const Instance& inst) {
        const auto& poly = inst.polyhedron();
        atu.assign(inst.n(), {});
        for (std::size_t r = 0; r < poly.rows.size(); ++r) {
            b.push_back(poly.rows[r].rhs);
            senses.push_back(poly.rows[r].sense);
            for (auto [idx, coef] : poly.rows[r].coeffs)
                atu[idx].push_back({static_cast<int>(r), coef});
        }
    }
};

void require_duality(const InverseSpec& spec) {
    const Instance& inst = *spec.instance;
    if (!inst.polyhedron().integral_relaxation)
        throw Error("inverse master: duality form requires integral_relaxation; "
                    "use the primal-pool variant");
    bool general = spec.mode == InverseMode::BestGeneral ||
                   spec.mode == InverseMode::WorstGeneral;
    if (general && inst.kind() == Kind::ShortestPath) {
        // Negative scenarios would make the inner flow LP unbounded via
        // cycles, breaking the dual rows.
        for (int i = 0; i < inst.n(); ++i)
            if (inst.c_hat()[i] - spec.cap_minus[i] < -kTol)
                throw Error("inverse master: shortest-path duality is unsound when "
                            "caps allow negative costs; use the primal-pool variant");
    }
}

void require_finite_caps(const InverseSpec& spec) {
    for (int i = 0; i < spec.instance->n(); ++i)
        if (spec.cap_plus[i] == kInf || spec.cap_minus[i] == kInf)
            throw Error("inverse master: infinite cap on a linearized coordinate; "
                        "provide a finite big-M cap");
}

std::vector<int> add_dual_vars(LinearProgram& lp, const PolyView& poly,
                               const std::string& prefix) {
    std::vector<int> u;
    for (std::size_t r = 0; r < poly.b.size(); ++r) {
        double lb = poly.senses[r] == 'E' ? -kInf : 0.0;
        u.push_back(lp.add_var(prefix + std::to_string(r), lb, kInf, 0.0));
    }
    return u;
}

void add_feasibility_rows(LinearProgram& lp, const Instance& inst,
                          const std::vector<int>& block, const std::string& prefix) {
    const auto& poly = inst.polyhedron();
    for (std::size_t r = 0; r < poly.rows.size(); ++r) {
        std::vector<std::pair<int, double>> coeffs;
        for (auto [idx, coef] : poly.rows[r].coeffs) coeffs.push_back({block[idx], coef});
        lp.add_row(prefix + std::to_string(r), std::move(coeffs), poly.rows[r].sense,
                   poly.rows[r].rhs);
    }
}

// Four-row envelope for w = s * x with binary x, continuous s in [0, M]:
// exact at every integral x (both envelopes pinch to s*x).
void add_product_rows(LinearProgram& lp, int w, int s, int x, double big_m,
                      const std::string& prefix) {
    lp.add_row(prefix + "_le_s", {{w, 1.0}, {s, -1.0}}, 'L', 0.0);
    lp.add_row(prefix + "_ge", {{s, 1.0}, {x, big_m}, {w, -1.0}}, 'L', big_m);
    lp.add_row(prefix + "_le_mx", {{w, 1.0}, {x, -big_m}}, 'L', 0.0);
}

std::vector<int> add_binary_block(LinearProgram& lp, std::vector<int>& binaries, int n,
                                  const std::string& prefix) {
    std::vector<int> block;
    for (int i = 0; i < n; ++i) {
        int v = lp.add_var(prefix + std::to_string(i), 0.0, 1.0, 0.0);
        block.push_back(v);
        binaries.push_back(v);
    }
    return block;
}

void add_symmetry_rows(LinearProgram& lp, const std::vector<int>& dp,
                       const std::vector<int>& dm) {
    for (std::size_t i = 0; i < dp.size(); ++i)
        lp.add_row("sym" + std::to_string(i), {{dp[i], 1.0}, {dm[i], -1.0}}, 'E', 0.0);
}

} // namespace

InverseModel build_bestcase_regular(const InverseSpec& spec) {
    spec.check(InverseMode::BestRegular);
    require_duality(spec);
    if (spec.pool.empty()) throw Error("build_bestcase_regular: empty competitor pool");
    const Instance& inst = *spec.instance;
    const Vec& c = inst.c_hat();
    PolyView poly(inst);

    InverseModel im;
    LinearProgram& lp = im.model.lp;
    lp.sense = LinearProgram::Sense::Max;

    im.lambda_var = lp.add_var("lam", 0.0, 1.0, 1.0);
    std::vector<int> u = add_dual_vars(lp, poly, "u");

    // Dual rows: (A^t u)_i + lam * c_i (1 - 2 xhat_i) <= c_i.
    for (int i = 0; i < inst.n(); ++i) {
        std::vector<std::pair<int, double>> coeffs;
        for (auto [r, coef] : poly.atu[i]) coeffs.push_back({u[r], coef});
        double lam_coef = c[i] * (1.0 - 2.0 * (spec.x_hat.x[i] ? 1.0 : 0.0));
        if (lam_coef != 0.0) coeffs.push_back({im.lambda_var, lam_coef});
        lp.add_row("dual" + std::to_string(i), std::move(coeffs), 'L', c[i]);
    }

    double c_hat_xhat = dot(c, spec.x_hat.x);
    for (std::size_t k = 0; k < spec.pool.size(); ++k) {
        const BinVec& xt = spec.pool[k].x;
        std::string tag = "k" + std::to_string(k);
        auto xk = add_binary_block(lp, im.model.binaries, inst.n(), "x" + tag + "_");
        std::vector<int> yk;
        for (int i = 0; i < inst.n(); ++i)
            yk.push_back(lp.add_var("y" + tag + "_" + std::to_string(i), 0.0, 1.0, 0.0));
        im.pool_x_vars.push_back(xk);
        im.pool_y_vars.push_back(yk);

        double c_hat_xt = dot(c, xt);
        std::vector<std::pair<int, double>> coeffs;
        double lam_coef = c_hat_xhat - c_hat_xt;
        if (lam_coef != 0.0) coeffs.push_back({im.lambda_var, lam_coef});
        for (std::size_t r = 0; r < poly.b.size(); ++r)
            if (poly.b[r] != 0.0) coeffs.push_back({u[r], -poly.b[r]});
        for (int i = 0; i < inst.n(); ++i) {
            if (c[i] != 0.0) coeffs.push_back({xk[i], c[i]});
            double yc = (2.0 * (xt[i] ? 1.0 : 0.0) - 1.0) * c[i];
            if (yc != 0.0) coeffs.push_back({yk[i], yc});
        }
        lp.add_row("pool" + tag, std::move(coeffs), 'L', c_hat_xt - c_hat_xhat);

        for (int i = 0; i < inst.n(); ++i)
            add_product_rows(lp, yk[i], im.lambda_var, xk[i], 1.0,
                             "mc" + tag + "_" + std::to_string(i));
        add_feasibility_rows(lp, inst, xk, "feas" + tag + "_");
    }
    im.model.validate();
    return im;
}

InverseModel build_worstcase_regular(const InverseSpec& spec) {
    spec.check(InverseMode::WorstRegular);
    require_duality(spec);
    const Instance& inst = *spec.instance;
    const Vec& c = inst.c_hat();
    PolyView poly(inst);

    InverseModel im;
    LinearProgram& lp = im.model.lp;
    lp.sense = LinearProgram::Sense::Min;

    im.lambda_var = lp.add_var("lam", 0.0, 1.0, 1.0);
    std::vector<int> u = add_dual_vars(lp, poly, "u");
    im.xprime_vars = add_binary_block(lp, im.model.binaries, inst.n(), "xp");
    im.xtilde_vars = add_binary_block(lp, im.model.binaries, inst.n(), "xt");
    for (int i = 0; i < inst.n(); ++i) {
        im.y_vars.push_back(lp.add_var("y" + std::to_string(i), 0.0, 1.0, 0.0));
        im.beta_vars.push_back(lp.add_var("beta" + std::to_string(i), 0.0, 1.0, 0.0));
    }

    // Main row: lam*c^t xhat - sum c_i xp_i - sum (2 xhat_i - 1) c_i y_i
    //           - sum c_i xt_i - sum c_i beta_i + b^t u >= eps - c^t xhat.
    double c_hat_xhat = dot(c, spec.x_hat.x);
    {
        std::vector<std::pair<int, double>> coeffs;
        if (c_hat_xhat != 0.0) coeffs.push_back({im.lambda_var, c_hat_xhat});
        for (int i = 0; i < inst.n(); ++i) {
            if (c[i] == 0.0) continue;
            coeffs.push_back({im.xprime_vars[i], -c[i]});
            double yc = -(2.0 * (spec.x_hat.x[i] ? 1.0 : 0.0) - 1.0) * c[i];
            coeffs.push_back({im.y_vars[i], yc});
            coeffs.push_back({im.xtilde_vars[i], -c[i]});
            coeffs.push_back({im.beta_vars[i], -c[i]});
        }
        for (std::size_t r = 0; r < poly.b.size(); ++r)
            if (poly.b[r] != 0.0) coeffs.push_back({u[r], poly.b[r]});
        lp.add_row("beats", std::move(coeffs), 'G', spec.eps - c_hat_xhat);
    }

    // Dual rows for the competitor's regret:
    // (A^t u)_i + lam*c_i - 2 c_i beta_i <= c_i.
    for (int i = 0; i < inst.n(); ++i) {
        std::vector<std::pair<int, double>> coeffs;
        for (auto [r, coef] : poly.atu[i]) coeffs.push_back({u[r], coef});
        if (c[i] != 0.0) {
            coeffs.push_back({im.lambda_var, c[i]});
            coeffs.push_back({im.beta_vars[i], -2.0 * c[i]});
        }
        lp.add_row("dual" + std::to_string(i), std::move(coeffs), 'L', c[i]);
    }

    for (int i = 0; i < inst.n(); ++i) {
        add_product_rows(lp, im.y_vars[i], im.lambda_var, im.xprime_vars[i], 1.0,
                         "mcy" + std::to_string(i));
        add_product_rows(lp, im.beta_vars[i], im.lambda_var, im.xtilde_vars[i], 1.0,
                         "mcb" + std::to_string(i));
    }
    add_feasibility_rows(lp, inst, im.xprime_vars, "feasp");
    add_feasibility_rows(lp, inst, im.xtilde_vars, "feast");
    im.model.validate();
    return im;
}

InverseModel build_bestcase_general(const InverseSpec& spec) {
    spec.check(InverseMode::BestGeneral);
    require_duality(spec);
    require_finite_caps(spec);
    if (spec.pool.empty()) throw Error("build_bestcase_general: empty competitor pool");
    const Instance& inst = *spec.instance;
    const Vec& c = inst.c_hat();
    PolyView poly(inst);

    InverseModel im;
    LinearProgram& lp = im.model.lp;
    lp.sense = LinearProgram::Sense::Max;

    for (int i = 0; i < inst.n(); ++i)
        im.d_plus_vars.push_back(lp.add_var("dp" + std::to_string(i), 0.0,
                                            spec.cap_plus[i], 1.0));
    for (int i = 0; i < inst.n(); ++i)
        im.d_minus_vars.push_back(lp.add_var("dm" + std::to_string(i), 0.0,
                                             spec.cap_minus[i], 1.0));
    std::vector<int> u = add_dual_vars(lp, poly, "u");
    if (spec.symmetric) add_symmetry_rows(lp, im.d_plus_vars, im.d_minus_vars);

    // Dual rows: (A^t u)_i + dm_i (1 - xhat_i) - dp_i xhat_i <= c_i.
    for (int i = 0; i < inst.n(); ++i) {
        std::vector<std::pair<int, double>> coeffs;
        for (auto [r, coef] : poly.atu[i]) coeffs.push_back({u[r], coef});
        if (spec.x_hat.x[i])
            coeffs.push_back({im.d_plus_vars[i], -1.0});
        else
            coeffs.push_back({im.d_minus_vars[i], 1.0});
        lp.add_row("dual" + std::to_string(i), std::move(coeffs), 'L', c[i]);
    }

    double c_hat_xhat = dot(c, spec.x_hat.x);
    for (std::size_t k = 0; k < spec.pool.size(); ++k) {
        const BinVec& xt = spec.pool[k].x;
        std::string tag = "k" + std::to_string(k);
        auto xk = add_binary_block(lp, im.model.binaries, inst.n(), "x" + tag + "_");
        std::vector<int> yk, zk;
        for (int i = 0; i < inst.n(); ++i) {
            yk.push_back(lp.add_var("y" + tag + "_" + std::to_string(i), 0.0,
                                    spec.cap_plus[i], 0.0));
            zk.push_back(lp.add_var("z" + tag + "_" + std::to_string(i), 0.0,
                                    spec.cap_minus[i], 0.0));
        }
        im.pool_x_vars.push_back(xk);
        im.pool_y_vars.push_back(yk);
        im.pool_z_vars.push_back(zk);

        // sum dp_i (xhat_i - xt_i) - b^t u + sum c_i xk_i - sum zk_i
        //   + sum xt_i (yk_i + zk_i) <= c^t xt - c^t xhat
        double c_hat_xt = dot(c, xt);
        std::vector<std::pair<int, double>> coeffs;
        for (int i = 0; i < inst.n(); ++i) {
            double dc = (spec.x_hat.x[i] ? 1.0 : 0.0) - (xt[i] ? 1.0 : 0.0);
            if (dc != 0.0) coeffs.push_back({im.d_plus_vars[i], dc});
        }
        for (std::size_t r = 0; r < poly.b.size(); ++r)
            if (poly.b[r] != 0.0) coeffs.push_back({u[r], -poly.b[r]});
        for (int i = 0; i < inst.n(); ++i) {
            if (c[i] != 0.0) coeffs.push_back({xk[i], c[i]});
            if (xt[i]) {
                coeffs.push_back({yk[i], 1.0});
                // zk coefficient: -1 + 1 = 0 when xt_i = 1
            } else {
                coeffs.push_back({zk[i], -1.0});
            }
        }
        lp.add_row("pool" + tag, std::move(coeffs), 'L', c_hat_xt - c_hat_xhat);

        for (int i = 0; i < inst.n(); ++i) {
            add_product_rows(lp, yk[i], im.d_plus_vars[i], xk[i], spec.cap_plus[i],
                             "mcy" + tag + "_" + std::to_string(i));
            add_product_rows(lp, zk[i], im.d_minus_vars[i], xk[i], spec.cap_minus[i],
                             "mcz" + tag + "_" + std::to_string(i));
        }
        add_feasibility_rows(lp, inst, xk, "feas" + tag + "_");
    }
    im.model.validate();
    return im;
}

InverseModel build_worstcase_general(const InverseSpec& spec) {
    spec.check(InverseMode::WorstGeneral);
    require_duality(spec);
    require_finite_caps(spec);
    const Instance& inst = *spec.instance;
    const Vec& c = inst.c_hat();
    PolyView poly(inst);

    InverseModel im;
    LinearProgram& lp = im.model.lp;
    lp.sense = LinearProgram::Sense::Min;

    for (int i = 0; i < inst.n(); ++i)
        im.d_plus_vars.push_back(lp.add_var("dp" + std::to_string(i), 0.0,
                                            spec.cap_plus[i], 1.0));
    for (int i = 0; i < inst.n(); ++i)
        im.d_minus_vars.push_back(lp.add_var("dm" + std::to_string(i), 0.0,
                                             spec.cap_minus[i], 1.0));
    std::vector<int> u = add_dual_vars(lp, poly, "u");
    im.xprime_vars = add_binary_block(lp, im.model.binaries, inst.n(), "xp");
    im.xtilde_vars = add_binary_block(lp, im.model.binaries, inst.n(), "xt");
    for (int i = 0; i < inst.n(); ++i) {
        im.y_vars.push_back(
            lp.add_var("y" + std::to_string(i), 0.0, spec.cap_plus[i], 0.0));
        im.z_vars.push_back(
            lp.add_var("z" + std::to_string(i), 0.0, spec.cap_minus[i], 0.0));
        im.beta_vars.push_back(
            lp.add_var("beta" + std::to_string(i), 0.0, spec.cap_plus[i], 0.0));
        im.gamma_vars.push_back(
            lp.add_var("gam" + std::to_string(i), 0.0, spec.cap_minus[i], 0.0));
    }
    if (spec.symmetric) add_symmetry_rows(lp, im.d_plus_vars, im.d_minus_vars);

    // Main row: sum dp_i xhat_i - sum c_i xp_i + sum z_i (1 - xhat_i)
    //   - sum xhat_i y_i - sum c_i xt_i - sum beta_i + b^t u >= eps - c^t xhat.
    double c_hat_xhat = dot(c, spec.x_hat.x);
    {
        std::vector<std::pair<int, double>> coeffs;
        for (int i = 0; i < inst.n(); ++i) {
            if (spec.x_hat.x[i]) {
                coeffs.push_back({im.d_plus_vars[i], 1.0});
                coeffs.push_back({im.y_vars[i], -1.0});
            } else {
                coeffs.push_back({im.z_vars[i], 1.0});
            }
            if (c[i] != 0.0) {
                coeffs.push_back({im.xprime_vars[i], -c[i]});
                coeffs.push_back({im.xtilde_vars[i], -c[i]});
            }
            coeffs.push_back({im.beta_vars[i], -1.0});
        }
        for (std::size_t r = 0; r < poly.b.size(); ++r)
            if (poly.b[r] != 0.0) coeffs.push_back({u[r], poly.b[r]});
        lp.add_row("beats", std::move(coeffs), 'G', spec.eps - c_hat_xhat);
    }

    // Dual rows: (A^t u)_i + dm_i - beta_i - gam_i <= c_i.
    for (int i = 0; i < inst.n(); ++i) {
        std::vector<std::pair<int, double>> coeffs;
        for (auto [r, coef] : poly.atu[i]) coeffs.push_back({u[r], coef});
        coeffs.push_back({im.d_minus_vars[i], 1.0});
        coeffs.push_back({im.beta_vars[i], -1.0});
        coeffs.push_back({im.gamma_vars[i], -1.0});
        lp.add_row("dual" + std::to_string(i), std::move(coeffs), 'L', c[i]);
    }

    for (int i = 0; i < inst.n(); ++i) {
        add_product_rows(lp, im.y_vars[i], im.d_plus_vars[i], im.xprime_vars[i],
                         spec.cap_plus[i], "mcy" + std::to_string(i));
        add_product_rows(lp, im.z_vars[i], im.d_minus_vars[i], im.xprime_vars[i],
                         spec.cap_minus[i], "mcz" + std::to_string(i));
        add_product_rows(lp, im.beta_vars[i], im.d_plus_vars[i], im.xtilde_vars[i],
                         spec.cap_plus[i], "mcb" + std::to_string(i));
        add_product_rows(lp, im.gamma_vars[i], im.d_minus_vars[i], im.xtilde_vars[i],
                         spec.cap_minus[i], "mcg" + std::to_string(i));
    }
    add_feasibility_rows(lp, inst, im.xprime_vars, "feasp");
    add_feasibility_rows(lp, inst, im.xtilde_vars, "feast");
    im.model.validate();
    return im;
}

UnconstrainedBestCase unconstrained_bestcase(const Vec& c_hat, const Vec& cap_plus,
                                             const Vec& cap_minus) {
    std::size_t n = c_hat.size();
    if (cap_plus.size() != n || cap_minus.size() != n)
        throw Error("unconstrained_bestcase: cap vectors must match c_hat");
    UnconstrainedBestCase res;
    res.d_plus.assign(n, 0.0);
    res.d_minus.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (cap_plus[i] < 0.0 || cap_minus[i] < 0.0)
            throw Error("unconstrained_bestcase: caps must be nonnegative");
        if (c_hat[i] <= 0.0) {
            res.d_plus[i] = std::min(cap_minus[i] - 2.0 * c_hat[i], cap_plus[i]);
            res.d_minus[i] = cap_minus[i];
        } else {
            res.d_plus[i] = cap_plus[i];
            res.d_minus[i] = std::min(cap_plus[i] + 2.0 * c_hat[i], cap_minus[i]);
        }
        res.size += res.d_plus[i] + res.d_minus[i];
    }
    return res;
}

namespace {

struct PairLp {
    LinearProgram lp;
    std::vector<int> dp, dm;
};

PairLp make_deviation_lp(const Instance& inst, const Vec& cap_plus, const Vec& cap_minus,
                         bool symmetric, LinearProgram::Sense sense) {
    PairLp out;
    out.lp.sense = sense;
    for (int i = 0; i < inst.n(); ++i)
        out.dp.push_back(out.lp.add_var("dp" + std::to_string(i), 0.0, cap_plus[i], 1.0));
    for (int i = 0; i < inst.n(); ++i)
        out.dm.push_back(out.lp.add_var("dm" + std::to_string(i), 0.0, cap_minus[i], 1.0));
    if (symmetric) add_symmetry_rows(out.lp, out.dp, out.dm);
    return out;
}

// Row expressing L(x1, y1, d) - L(x2, y2, d) <= rhs_shift as coefficients
// on (d+, d-) plus a constant moved to the rhs.
void add_l_difference_row(PairLp& plp, const Instance& inst, const BinVec& x1,
                          const BinVec& y1, const BinVec& x2, const BinVec& y2,
                          double rhs_shift, const std::string& name) {
    std::vector<std::pair<int, double>> coeffs;
    double rhs = rhs_shift;
    const Vec& c = inst.c_hat();
    for (int i = 0; i < inst.n(); ++i) {
        double a1 = (x1[i] ? 1.0 : 0.0) * (1.0 - (y1[i] ? 1.0 : 0.0));
        double a2 = (x2[i] ? 1.0 : 0.0) * (1.0 - (y2[i] ? 1.0 : 0.0));
        if (a1 - a2 != 0.0) coeffs.push_back({plp.dp[i], a1 - a2});
        double b1 = (1.0 - (x1[i] ? 1.0 : 0.0)) * (y1[i] ? 1.0 : 0.0);
        double b2 = (1.0 - (x2[i] ? 1.0 : 0.0)) * (y2[i] ? 1.0 : 0.0);
        if (b1 - b2 != 0.0) coeffs.push_back({plp.dm[i], b1 - b2});
        rhs -= c[i] * ((x1[i] ? 1.0 : 0.0) - (y1[i] ? 1.0 : 0.0));
        rhs += c[i] * ((x2[i] ? 1.0 : 0.0) - (y2[i] ? 1.0 : 0.0));
    }
    plp.lp.add_row(name, std::move(coeffs), 'L', rhs);
}

} // namespace

WitnessResult witness_oracle(const InverseSpec& spec, std::size_t max_combos) {
    bool best = spec.mode == InverseMode::BestGeneral;
    if (!best && spec.mode != InverseMode::WorstGeneral)
        throw Error("witness_oracle: only the general modes are supported");
    spec.check(spec.mode);
    const Instance& inst = *spec.instance;
    auto feasible = enumerate_feasible(inst, 4096);
    std::size_t xhat_idx = feasible.size();
    for (std::size_t i = 0; i < feasible.size(); ++i)
        if (feasible[i].x == spec.x_hat.x) xhat_idx = i;
    if (xhat_idx == feasible.size())
        throw Error("witness_oracle: x_hat not found in the feasible set");

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < feasible.size(); ++i)
        if (i != xhat_idx) others.push_back(i);

    WitnessResult res;
    if (best) {
        // One witness per competitor; the combination count is |X|^(|X|-1).
        double combos = 1.0;
        for (std::size_t k = 0; k < others.size(); ++k) {
            combos *= static_cast<double>(feasible.size());
            if (combos > static_cast<double>(max_combos))
                throw Error("witness_oracle: witness-combination count exceeds limit");
        }
        res.feasible = false;
        res.objective = -kInf;
        std::vector<std::size_t> w(others.size(), 0);
        while (true) {
            PairLp plp = make_deviation_lp(inst, spec.cap_plus, spec.cap_minus,
                                           spec.symmetric, LinearProgram::Sense::Max);
            int row_id = 0;
            for (std::size_t t = 0; t < others.size(); ++t) {
                const BinVec& xt = feasible[others[t]].x;
                const BinVec& wt = feasible[w[t]].x;
                for (const auto& yh : feasible)
                    add_l_difference_row(plp, inst, spec.x_hat.x, yh.x, xt, wt, 0.0,
                                         "r" + std::to_string(row_id++));
            }
            SimplexResult sol = simplex_solve(plp.lp);
            if (sol.status == LpStatus::Unbounded) {
                res.feasible = true;
                res.objective = kInf;
                return res;
            }
            if (sol.status == LpStatus::Optimal && sol.objective > res.objective) {
                res.feasible = true;
                res.objective = sol.objective;
                res.d_plus.assign(inst.n(), 0.0);
                res.d_minus.assign(inst.n(), 0.0);
                for (int i = 0; i < inst.n(); ++i) {
                    res.d_plus[i] = sol.x[plp.dp[i]];
                    res.d_minus[i] = sol.x[plp.dm[i]];
                }
            }
            // Odometer step.
            std::size_t pos = 0;
            while (pos < w.size()) {
                if (++w[pos] < feasible.size()) break;
                w[pos] = 0;
                ++pos;
            }
            if (pos == w.size()) break;
        }
        return res;
    }

    // Worst case: minimize over (competitor, witness-for-x_hat) pairs.
    if (others.size() * feasible.size() > max_combos)
        throw Error("witness_oracle: pair count exceeds limit");
    res.feasible = false;
    res.objective = kInf;
    for (std::size_t t : others) {
        const BinVec& xt = feasible[t].x;
        for (const auto& yh : feasible) {
            PairLp plp = make_deviation_lp(inst, spec.cap_plus, spec.cap_minus,
                                           spec.symmetric, LinearProgram::Sense::Min);
            int row_id = 0;
            // L(xt, y, d) + eps <= L(xhat, yhat, d) for every y.
            for (const auto& y : feasible)
                add_l_difference_row(plp, inst, xt, y.x, spec.x_hat.x, yh.x, -spec.eps,
                                     "r" + std::to_string(row_id++));
            SimplexResult sol = simplex_solve(plp.lp);
            if (sol.status != LpStatus::Optimal) continue;
            if (sol.objective < res.objective - 1e-12) {
                res.feasible = true;
                res.objective = sol.objective;
                res.d_plus.assign(inst.n(), 0.0);
                res.d_minus.assign(inst.n(), 0.0);
                for (int i = 0; i < inst.n(); ++i) {
                    res.d_plus[i] = sol.x[plp.dp[i]];
                    res.d_minus[i] = sol.x[plp.dm[i]];
                }
            }
        }
    }
    if (!res.feasible) res.objective = 0.0;
    return res;
}

GeneralInverseResult solve_worstcase_general(const Instance& inst, const Solution& x_hat,
                                             const Vec& cap_plus, const Vec& cap_minus,
                                             double eps, bool symmetric,
                                             std::size_t enum_limit) {
    if (eps <= 0.0) throw Error("solve_worstcase_general: eps must be > 0");
    auto feasible = enumerate_feasible(inst, enum_limit);
    double nominal_opt = kInf;
    for (const auto& s : feasible) nominal_opt = std::min(nominal_opt, s.c_hat_cost);

    struct PairCand {
        std::size_t xt, yh;
        double lb;
    };
    std::vector<PairCand> pairs;
    for (std::size_t t = 0; t < feasible.size(); ++t) {
        if (feasible[t].x == x_hat.x) continue;
        double gap_t = feasible[t].c_hat_cost - nominal_opt;
        for (std::size_t h = 0; h < feasible.size(); ++h) {
            double gap_h = feasible[h].c_hat_cost - nominal_opt;
            // Closing the nominal deficit costs at least one unit of
            // deviation mass per unit of deficit.
            pairs.push_back({t, h, gap_t + gap_h + eps});
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairCand& a, const PairCand& b) {
        if (a.lb != b.lb) return a.lb < b.lb;
        if (a.xt != b.xt) return a.xt < b.xt;
        return a.yh < b.yh;
    });

    GeneralInverseResult res;
    res.feasible = false;
    res.objective = kInf;

    for (const auto& pc : pairs) {
        if (res.feasible && pc.lb >= res.objective - 1e-12) break;
        const BinVec& xt = feasible[pc.xt].x;
        const BinVec& yh = feasible[pc.yh].x;
        PairLp plp = make_deviation_lp(inst, cap_plus, cap_minus, symmetric,
                                       LinearProgram::Sense::Min);
        std::unordered_set<std::string> added;
        auto key_of = [](const BinVec& v) {
            std::string k(v.begin(), v.end());
            return k;
        };
        auto add_y_row = [&](const BinVec& y, int idx) {
            add_l_difference_row(plp, inst, xt, y, x_hat.x, yh, -eps,
                                 "lazy" + std::to_string(idx));
        };
        int row_id = 0;
        add_y_row(x_hat.x, row_id++);
        added.insert(key_of(x_hat.x));
        if (!(xt == x_hat.x)) {
            add_y_row(xt, row_id++);
            added.insert(key_of(xt));
        }
        bool pair_ok = false;
        double pair_val = kInf;
        Vec dp, dm;
        for (int guard = 0; guard < static_cast<int>(feasible.size()) + 4; ++guard) {
            SimplexResult sol = simplex_solve(plp.lp);
            if (sol.status == LpStatus::Infeasible) break;
            if (sol.status != LpStatus::Optimal)
                throw Error("solve_worstcase_general: pair LP failed: " + sol.message);
            dp.assign(inst.n(), 0.0);
            dm.assign(inst.n(), 0.0);
            for (int i = 0; i < inst.n(); ++i) {
                dp[i] = std::clamp(sol.x[plp.dp[i]], 0.0, cap_plus[i]);
                dm[i] = std::clamp(sol.x[plp.dm[i]], 0.0, cap_minus[i]);
            }
            // Separation: the competitor's true regret under d.
            Vec scen = scenario_general(inst, xt, dp, dm);
            Solution ystar = solve_scenario_min(inst, scen);
            double true_reg = l_value(inst, xt, ystar.x, dp, dm);
            double lhs = l_value(inst, x_hat.x, yh, dp, dm);
            if (lhs >= true_reg + eps - 1e-6) {
                pair_ok = true;
                pair_val = sol.objective;
                break;
            }
            std::string key = key_of(ystar.x);
            if (added.count(key))
                throw Error("solve_worstcase_general: separation stalled");
            added.insert(key);
            add_y_row(ystar.x, row_id++);
        }
        if (pair_ok && pair_val < res.objective - 1e-12) {
            res.feasible = true;
            res.objective = pair_val;
            res.d_plus = dp;
            res.d_minus = dm;
            res.beating = xt;
        }
    }
    if (!res.feasible) res.objective = 0.0;
    return res;
}

namespace {

double read_var(const Vec& x, int idx) { return idx >= 0 ? x[idx] : 0.0; }

} // namespace

RowGenResult row_generation_solve(const InverseSpec& spec, int budget,
                                  std::size_t enum_limit) {
    spec.check(spec.mode);
    const Instance& inst = *spec.instance;
    bool best = spec.mode == InverseMode::BestRegular || spec.mode == InverseMode::BestGeneral;
    bool regular =
        spec.mode == InverseMode::BestRegular || spec.mode == InverseMode::WorstRegular;

    auto feasible = enumerate_feasible(inst, enum_limit);

    auto regret_at = [&](const Solution& x, double lambda, const Vec& dp,
                         const Vec& dm) {
        if (regular) return regret_regular(inst, x, lambda);
        GeneralInterval gi;
        gi.d_plus = dp;
        gi.d_minus = dm;
        gi.cap_plus = spec.cap_plus;
        gi.cap_minus = spec.cap_minus;
        return regret_general(inst, x, gi);
    };

    RowGenResult out;
    if (best) {
        InverseSpec work = spec;
        work.pool.clear();
        work.pool.push_back(spec.x_hat);
        for (int it = 1; it <= budget; ++it) {
            out.iterations = it;
            InverseModel im = regular ? build_bestcase_regular(work)
                                      : build_bestcase_general(work);
            BnbResult sol = branch_and_bound(im.model);
            if (sol.status == MilpStatus::BudgetExhausted) {
                out.budget_exhausted = true;
                out.objective = sol.bound;
                return out;
            }
            if (sol.status != MilpStatus::Optimal)
                throw Error("row_generation_solve: best-mode master not optimal");
            double lambda = 0.0;
            Vec dp(inst.n(), 0.0), dm(inst.n(), 0.0);
            if (regular) {
                lambda = std::clamp(read_var(sol.x, im.lambda_var), 0.0, 1.0);
            } else {
                for (int i = 0; i < inst.n(); ++i) {
                    dp[i] = std::clamp(sol.x[im.d_plus_vars[i]], 0.0, spec.cap_plus[i]);
                    dm[i] = std::clamp(sol.x[im.d_minus_vars[i]], 0.0, spec.cap_minus[i]);
                }
            }
            double reg_hat = regret_at(spec.x_hat, lambda, dp, dm);
            double best_alt = kInf;
            const Solution* arg = nullptr;
            for (const auto& s : feasible) {
                double r = regret_at(s, lambda, dp, dm);
                if (r < best_alt - 1e-12) {
                    best_alt = r;
                    arg = &s;
                }
            }
            if (reg_hat <= best_alt + 1e-6) {
                out.objective = sol.objective;
                out.lambda = lambda;
                out.d_plus = dp;
                out.d_minus = dm;
                return out;
            }
            for (const auto& existing : work.pool)
                if (existing.x == arg->x)
                    throw Error("row_generation_solve: pool cycled; "
                                "master tolerances are inconsistent");
            work.pool.push_back(*arg);
            out.pool_trace.push_back(arg->x);
        }
        out.budget_exhausted = true;
        return out;
    }

    // Worst modes: the compact duality model needs no iteration.
    out.iterations = 1;
    InverseModel im =
        regular ? build_worstcase_regular(spec) : build_worstcase_general(spec);
    BnbResult sol = branch_and_bound(im.model);
    if (sol.status == MilpStatus::Infeasible) {
        out.feasible = false;
        return out;
    }
    if (sol.status == MilpStatus::BudgetExhausted) {
        out.budget_exhausted = true;
        out.objective = sol.bound;
        return out;
    }
    if (sol.status != MilpStatus::Optimal)
        throw Error("row_generation_solve: worst-mode model not optimal");
    out.objective = sol.objective;
    if (regular) {
        out.lambda = std::clamp(read_var(sol.x, im.lambda_var), 0.0, 1.0);
    } else {
        out.d_plus.assign(inst.n(), 0.0);
        out.d_minus.assign(inst.n(), 0.0);
        for (int i = 0; i < inst.n(); ++i) {
            out.d_plus[i] = std::clamp(sol.x[im.d_plus_vars[i]], 0.0, spec.cap_plus[i]);
            out.d_minus[i] = std::clamp(sol.x[im.d_minus_vars[i]], 0.0, spec.cap_minus[i]);
        }
    }
    return out;
}

GeneralInverseResult solve_bestcase_general(const Instance& inst, const Solution& x_hat,
                                            const Vec& cap_plus, const Vec& cap_minus,
                                            bool symmetric, std::size_t enum_limit) {
    InverseSpec spec;
    spec.instance = &inst;
    spec.x_hat = x_hat;
    spec.mode = InverseMode::BestGeneral;
    spec.cap_plus = cap_plus;
    spec.cap_minus = cap_minus;
    spec.symmetric = symmetric;
    RowGenResult rg = row_generation_solve(spec, 64, enum_limit);
    if (rg.budget_exhausted)
        throw Error("solve_bestcase_general: row generation budget exhausted");
    GeneralInverseResult res;
    res.objective = rg.objective;
    res.d_plus = rg.d_plus;
    res.d_minus = rg.d_minus;
    res.feasible = rg.feasible;
    return res;
}

} // namespace varrob
