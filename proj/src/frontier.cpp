#include "varrob/frontier.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>

namespace varrob {

void Frontier::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        if (!std::isfinite(pt.f1) || !std::isfinite(pt.f2) || pt.f1 < -kTol || pt.f2 < -kTol)
            throw Error("frontier: objective values must be finite and nonnegative");
        if (pt.lambda_lo > pt.lambda_hi + kTol)
            throw Error("frontier: empty lambda interval");
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& a = points[i];
        const auto& b = points[i + 1];
        if (!(a.f1 < b.f1 - kTol) || !(a.f2 > b.f2 + kTol))
            throw Error("frontier: points must strictly decrease in f2 as f1 increases");
        if (std::fabs(a.lambda_hi - b.lambda_lo) > 1e-7)
            throw Error("frontier: lambda intervals must be contiguous");
    }
    if (!points.empty()) {
        if (std::fabs(points.front().lambda_lo) > kTol)
            throw Error("frontier: first interval must start at 0");
        if (points.back().lambda_hi != kInf)
            throw Error("frontier: last interval must be unbounded");
    }
    // Consecutive-slope convexity.
    for (std::size_t i = 0; i + 2 < points.size(); ++i) {
        const auto& a = points[i];
        const auto& b = points[i + 1];
        const auto& c = points[i + 2];
        double cross = (b.f1 - a.f1) * (c.f2 - a.f2) - (c.f1 - a.f1) * (b.f2 - a.f2);
        if (cross <= kTol) throw Error("frontier: interior point on hull");
    }
}

namespace detail {

Frontier frontier_from_candidates(std::vector<Solution> solutions,
                                  std::vector<double> f1, std::vector<double> f2) {
    if (solutions.empty()) throw Error("frontier_from_candidates: no candidates");
    std::vector<std::size_t> order(solutions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Exact comparisons only; tolerances would break strict weak ordering.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (f1[a] != f1[b]) return f1[a] < f1[b];
        if (f2[a] != f2[b]) return f2[a] < f2[b];
        return lex_less(solutions[a].x, solutions[b].x);
    });

    // Dominance sweep: keep strictly decreasing f2 along increasing f1.
    // Equivalent (f1, f2) pairs collapse to the lexicographically smallest
    // incidence vector, which the sort already placed first.
    std::vector<std::size_t> kept;
    for (std::size_t idx : order) {
        if (!kept.empty()) {
            if (std::fabs(f1[kept.back()] - f1[idx]) <= kTol) {
                if (f2[idx] < f2[kept.back()] - kTol) kept.back() = idx;
                continue;
            }
            if (f2[idx] >= f2[kept.back()] - kTol) continue;
        }
        kept.push_back(idx);
    }

    // Lower-left hull scan; a point on or above the segment between its
    // neighbours is edge-interior and dropped (tolerance on the cross
    // product).
    std::vector<std::size_t> hull;
    for (std::size_t idx : kept) {
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            double cross = (f1[b] - f1[a]) * (f2[idx] - f2[a]) -
                           (f1[idx] - f1[a]) * (f2[b] - f2[a]);
            if (cross <= 1e-9)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(idx);
    }

    Frontier frontier;
    frontier.points.reserve(hull.size());
    for (std::size_t idx : hull) {
        FrontierPoint pt;
        pt.solution = std::move(solutions[idx]);
        pt.f1 = f1[idx];
        pt.f2 = f2[idx];
        frontier.points.push_back(std::move(pt));
    }
    for (std::size_t i = 0; i < frontier.points.size(); ++i) {
        auto& pt = frontier.points[i];
        if (i == 0) pt.lambda_lo = 0.0;
        if (i + 1 == frontier.points.size()) {
            pt.lambda_hi = kInf;
        } else {
            const auto& nxt = frontier.points[i + 1];
            double crossing = (nxt.f1 - pt.f1) / (pt.f2 - nxt.f2);
            pt.lambda_hi = crossing;
            frontier.points[i + 1].lambda_lo = crossing;
        }
    }
    frontier.validate();
    return frontier;
}

} // namespace detail

LinearOracle::LinearOracle(const Instance& inst, Vec f1_costs, Vec f2_costs)
    : inst_(inst), f1_(std::move(f1_costs)), f2_(std::move(f2_costs)) {
    if (static_cast<int>(f1_.size()) != inst.n() || static_cast<int>(f2_.size()) != inst.n())
        throw Error("LinearOracle: cost vector length does not match instance");
}

Solution LinearOracle::solve(double lambda) {
    return solve_weighted_sum(inst_, f1_, f2_, lambda, WeightedMode::Plain);
}

Solution LinearOracle::solve_lex_f1() {
    return solve_weighted_sum(inst_, f1_, f2_, 0.0, WeightedMode::LexF1);
}

Solution LinearOracle::solve_lex_f2() {
    return solve_weighted_sum(inst_, f1_, f2_, 0.0, WeightedMode::LexF2);
}

MaxCriterionOracle::MaxCriterionOracle(const Instance& inst, Vec f1_costs, Vec d)
    : inst_(inst), f1_(std::move(f1_costs)), d_(std::move(d)) {
    if (static_cast<int>(f1_.size()) != inst.n() || static_cast<int>(d_.size()) != inst.n())
        throw Error("MaxCriterionOracle: vector length does not match instance");
    for (double v : d_)
        if (v < 0.0 || !std::isfinite(v))
            throw Error("MaxCriterionOracle: d must be nonnegative and finite");
    thresholds_ = {0.0};
    for (double v : d_) thresholds_.push_back(v);
    std::sort(thresholds_.begin(), thresholds_.end());
    thresholds_.erase(std::unique(thresholds_.begin(), thresholds_.end(),
                                  [](double a, double b) { return std::fabs(a - b) <= kTol; }),
                      thresholds_.end());
}

double MaxCriterionOracle::eval_f2(const Solution& s) const {
    double m = 0.0;
    for (std::size_t i = 0; i < s.x.size(); ++i)
        if (s.x[i]) m = std::max(m, d_[i]);
    return m;
}

bool MaxCriterionOracle::solve_restricted(double theta, const Vec& costs,
                                          Solution* out) const {
    switch (inst_.kind()) {
        case Kind::Unconstrained: {
            BinVec x(inst_.n(), 0);
            for (int i = 0; i < inst_.n(); ++i)
                if (d_[i] <= theta + kTol && costs[i] <= kTol) x[i] = 1;
            *out = inst_.make_solution(x);
            return true;
        }
        case Kind::ShortestPath: {
            std::vector<std::uint8_t> alive(inst_.n(), 0);
            for (int e = 0; e < inst_.n(); ++e) alive[e] = d_[e] <= theta + kTol;
            try {
                *out = inst_.make_solution(
                    detail::lex_min_path_restricted(inst_, costs, alive));
                return true;
            } catch (const Error&) {
                return false;
            }
        }
        case Kind::Assignment: {
            Vec masked = costs;
            for (int i = 0; i < inst_.n(); ++i)
                if (d_[i] > theta + kTol) masked[i] = detail::kForbiddenCost;
            BinVec x;
            if (!detail::lex_min_assignment_restricted(inst_.p(), masked, &x, nullptr))
                return false;
            *out = inst_.make_solution(x);
            return true;
        }
    }
    return false;
}

Solution MaxCriterionOracle::solve(double lambda) {
    bool have = false;
    Solution best;
    double best_val = kInf;
    for (double theta : thresholds_) {
        Solution cand;
        if (!solve_restricted(theta, f1_, &cand)) continue;
        double val = eval_f1(cand) + lambda * eval_f2(cand);
        if (!have || val < best_val - kTol ||
            (std::fabs(val - best_val) <= kTol && lex_less(cand.x, best.x))) {
            have = true;
            best = std::move(cand);
            best_val = std::min(best_val, val);
        }
    }
    if (!have) throw Error("MaxCriterionOracle: no feasible restriction");
    return best;
}

Solution MaxCriterionOracle::solve_lex_f1() {
    Solution full;
    if (!solve_restricted(thresholds_.back(), f1_, &full))
        throw Error("MaxCriterionOracle: infeasible instance");
    double v1 = eval_f1(full);
    for (double theta : thresholds_) {
        Solution cand;
        if (!solve_restricted(theta, f1_, &cand)) continue;
        if (eval_f1(cand) <= v1 + kTol) return cand;
    }
    return full;
}

Solution MaxCriterionOracle::solve_lex_f2() {
    for (double theta : thresholds_) {
        Solution cand;
        if (solve_restricted(theta, f1_, &cand)) return cand;
    }
    throw Error("MaxCriterionOracle: infeasible instance");
}

namespace {

struct ExploreRun {
    const Instance& inst;
    BicriteriaOracle& oracle;
    ExploreStats& stats;
    std::vector<Solution> cands;
    std::vector<double> f1s, f2s;
    int depth_cap;

    void add(Solution s) {
        f1s.push_back(oracle.eval_f1(s));
        f2s.push_back(oracle.eval_f2(s));
        cands.push_back(std::move(s));
    }

    Solution weighted(double lambda) {
        ++stats.weighted_solves;
        return oracle.solve(lambda);
    }

    void recurse(double a_f1, double a_f2, double b_f1, double b_f2, int depth) {
        stats.max_depth = std::max(stats.max_depth, depth);
        if (depth > depth_cap)
            throw Error("explore: recursion depth cap exceeded; "
                        "weighted-sum tie-breaking is not converging");
        if (!(a_f1 < b_f1 - kTol) || !(a_f2 > b_f2 + kTol)) return;
        double lambda = (b_f1 - a_f1) / (a_f2 - b_f2);
        Solution mid = weighted(lambda);
        double m_f1 = oracle.eval_f1(mid);
        double m_f2 = oracle.eval_f2(mid);
        double val_mid = m_f1 + lambda * m_f2;
        double val_ab = a_f1 + lambda * a_f2;
        if (val_mid < val_ab - 1e-9) {
            add(std::move(mid));
            recurse(a_f1, a_f2, m_f1, m_f2, depth + 1);
            recurse(m_f1, m_f2, b_f1, b_f2, depth + 1);
        }
    }
};

} // namespace

Frontier explore(const Instance& inst, BicriteriaOracle& oracle, ExploreStats* stats) {
    if (!inst.nonnegative_costs())
        throw Error("explore: instance nominal costs must be nonnegative");
    ExploreStats local;
    ExploreStats& st = stats ? *stats : local;
    ExploreRun run{inst, oracle, st, {}, {}, {}, 4 * std::max(1, inst.n())};

    ++st.weighted_solves;
    Solution x1 = oracle.solve_lex_f1();
    ++st.weighted_solves;
    Solution x2 = oracle.solve_lex_f2();
    double a_f1 = oracle.eval_f1(x1), a_f2 = oracle.eval_f2(x1);
    double b_f1 = oracle.eval_f1(x2), b_f2 = oracle.eval_f2(x2);
    run.add(std::move(x1));
    run.add(std::move(x2));
    run.recurse(a_f1, a_f2, b_f1, b_f2, 1);
    return detail::frontier_from_candidates(std::move(run.cands), std::move(run.f1s),
                                            std::move(run.f2s));
}

Frontier explore(const Instance& inst, const Vec& f1_costs, const Vec& f2_costs,
                 ExploreStats* stats) {
    LinearOracle oracle(inst, f1_costs, f2_costs);
    return explore(inst, oracle, stats);
}

namespace {

// Bicriteria label correcting with Pareto pruning. Removed labels are
// tombstoned rather than erased so predecessor indices stay valid for
// path reconstruction.
struct Label {
    double cost = 0.0;
    double second = 0.0;
    int pred_node = -1;
    int pred_idx = -1;
    int via_arc = -1;
    bool alive = true;
};

Frontier label_bicriteria(const Instance& inst, const Vec& costs,
                          const std::function<double(double, int)>& extend,
                          const std::function<double(const BinVec&)>& recompute_second) {
    if (inst.kind() != Kind::ShortestPath)
        throw Error("labeling requires a shortest-path instance");
    if (!inst.nonnegative_costs())
        throw Error("labeling: nominal costs must be nonnegative");

    std::vector<std::vector<Label>> labels(inst.num_nodes());
    std::deque<std::pair<int, int>> queue;
    labels[inst.source()].push_back(Label{});
    queue.push_back({inst.source(), 0});

    auto weakly_dominates = [](const Label& a, const Label& b) {
        return a.cost <= b.cost + 1e-9 && a.second <= b.second + 1e-9;
    };

    while (!queue.empty()) {
        auto [v, li] = queue.front();
        queue.pop_front();
        if (!labels[v][li].alive) continue;
        if (v == inst.sink()) continue; // extending past the sink never helps
        Label cur = labels[v][li];
        for (int e : inst.out_arcs()[v]) {
            int w = inst.arcs()[e].to;
            Label cand;
            cand.cost = cur.cost + costs[e];
            cand.second = extend(cur.second, e);
            cand.pred_node = v;
            cand.pred_idx = li;
            cand.via_arc = e;
            bool dominated = false;
            for (const Label& ex : labels[w]) {
                if (ex.alive && weakly_dominates(ex, cand)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            for (Label& ex : labels[w])
                if (ex.alive && weakly_dominates(cand, ex)) ex.alive = false;
            labels[w].push_back(cand);
            queue.push_back({w, static_cast<int>(labels[w].size()) - 1});
        }
    }

    std::vector<Solution> cands;
    std::vector<double> f1s, f2s;
    for (const Label& lab : labels[inst.sink()]) {
        if (!lab.alive) continue;
        // Reconstruct the arc walk, then strip any zero-progress cycles: a
        // nondominated sink label is always achieved by a simple path.
        std::vector<int> walk_arcs;
        const Label* cur = &lab;
        while (cur->pred_node != -1) {
            walk_arcs.push_back(cur->via_arc);
            cur = &labels[cur->pred_node][cur->pred_idx];
        }
        std::reverse(walk_arcs.begin(), walk_arcs.end());
        std::vector<int> path;
        std::vector<int> seen_at(inst.num_nodes(), -1);
        seen_at[inst.source()] = 0;
        for (int e : walk_arcs) {
            int to = inst.arcs()[e].to;
            if (seen_at[to] >= 0) {
                while (static_cast<int>(path.size()) > seen_at[to]) {
                    int dropped = path.back();
                    path.pop_back();
                    seen_at[inst.arcs()[dropped].to] = -1;
                }
            } else {
                path.push_back(e);
                seen_at[to] = static_cast<int>(path.size());
            }
        }
        BinVec x(inst.n(), 0);
        for (int e : path) x[e] = 1;
        Solution sol = inst.make_solution(x);
        f1s.push_back(dot(costs, x));
        f2s.push_back(recompute_second(x));
        cands.push_back(std::move(sol));
    }
    return detail::frontier_from_candidates(std::move(cands), std::move(f1s),
                                            std::move(f2s));
}

} // namespace

Frontier label_hops(const Instance& inst) {
    return label_bicriteria(
        inst, inst.c_hat(), [](double s, int) { return s + 1.0; },
        [&](const BinVec& x) {
            double h = 0.0;
            for (auto xi : x) h += xi;
            return h;
        });
}

Frontier label_maxedge(const Instance& inst, const Vec& d) {
    if (static_cast<int>(d.size()) != inst.n())
        throw Error("label_maxedge: d length does not match instance");
    for (double v : d)
        if (v < 0.0 || !std::isfinite(v))
            throw Error("label_maxedge: d must be nonnegative and finite");
    return label_bicriteria(
        inst, inst.c_hat(),
        [&](double s, int e) { return std::max(s, d[e]); },
        [&](const BinVec& x) {
            double m = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (x[i]) m = std::max(m, d[i]);
            return m;
        });
}

Frontier concave_filter(const Frontier& input,
                        const std::function<double(double)>& transform) {
    if (input.points.empty()) throw Error("concave_filter: empty frontier");
    std::vector<Solution> sols;
    std::vector<double> f1s, f2s;
    for (const auto& pt : input.points) {
        sols.push_back(pt.solution);
        f1s.push_back(pt.f1);
        f2s.push_back(transform(pt.f2));
        if (!std::isfinite(f2s.back()))
            throw Error("concave_filter: transform produced a non-finite value");
    }
    // Input f2 strictly decreases; a monotone transform must preserve the
    // (non-strict) order.
    for (std::size_t i = 0; i + 1 < f2s.size(); ++i)
        if (f2s[i] < f2s[i + 1] - 1e-9)
            throw Error("concave_filter: non-monotone transform rejected");
    return detail::frontier_from_candidates(std::move(sols), std::move(f1s),
                                            std::move(f2s));
}

Frontier solve_variable_sized(const Instance& inst, const Shape& shape,
                              std::size_t enum_limit) {
    if (!inst.nonnegative_costs())
        throw Error("solve_variable_sized: nominal costs must be nonnegative");
    switch (shape.kind()) {
        case ShapeKind::ProportionalBox: {
            // The nominal solution stays optimal for every budget.
            Solution nominal = solve_nominal(inst, inst.c_hat());
            Frontier f;
            FrontierPoint pt;
            pt.f1 = nominal.c_hat_cost;
            pt.f2 = second_criterion(shape, inst.c_hat(), nominal);
            pt.solution = std::move(nominal);
            pt.lambda_lo = 0.0;
            pt.lambda_hi = kInf;
            f.points.push_back(std::move(pt));
            return f;
        }
        case ShapeKind::ConstantBox: {
            Vec ones(inst.n(), 1.0);
            return explore(inst, inst.c_hat(), ones);
        }
        case ShapeKind::ArbitraryBox:
        case ShapeKind::InfinityBall:
            return explore(inst, inst.c_hat(), shape.d());
        case ShapeKind::ManhattanBall: {
            if (inst.kind() == Kind::ShortestPath)
                return label_maxedge(inst, shape.d());
            MaxCriterionOracle oracle(inst, inst.c_hat(), shape.d());
            return explore(inst, oracle);
        }
        case ShapeKind::EuclideanBall: {
            Frontier linear = explore(inst, inst.c_hat(), shape.d());
            return concave_filter(linear, [](double v) { return std::sqrt(v); });
        }
        case ShapeKind::Ellipsoid: {
            std::vector<Solution> all;
            try {
                all = enumerate_feasible(inst, enum_limit);
            } catch (const Error&) {
                throw Error("solve_variable_sized: ellipsoid frontier requires "
                            "enumeration and the feasible set exceeds the limit");
            }
            std::vector<double> f1s, f2s;
            Vec zeros(inst.n(), 0.0);
            for (const auto& s : all) {
                f1s.push_back(s.c_hat_cost);
                f2s.push_back(second_criterion(shape, inst.c_hat(), s));
            }
            return detail::frontier_from_candidates(std::move(all), std::move(f1s),
                                                    std::move(f2s));
        }
    }
    throw Error("solve_variable_sized: bad shape");
}

BoundCheck check_frontier_bounds(const Frontier& frontier, const FrontierMeta& meta) {
    BoundCheck check;
    check.graph_class = meta.graph_class;
    check.observed = static_cast<int>(frontier.size());
    if (meta.graph_class == "constant-growth") {
        check.bound = meta.n;
    } else if (meta.graph_class == "manhattan") {
        check.bound = meta.distinct_d;
    } else if (meta.graph_class == "series-parallel") {
        check.bound = meta.num_arcs - meta.num_nodes + 2;
    } else if (meta.graph_class == "layered") {
        double k = std::ceil(std::log2(static_cast<double>(meta.layers) + 1.0) - 1e-12);
        check.bound = std::pow(2.0 * meta.width, k);
    } else {
        throw Error("check_frontier_bounds: unknown graph class '" + meta.graph_class + "'");
    }
    check.pass = check.observed <= check.bound + kTol;
    return check;
}

std::vector<ChartRow> robustness_chart(const Frontier& frontier, const Vec& c_hat) {
    if (frontier.points.empty()) throw Error("robustness_chart: empty frontier");
    std::vector<ChartRow> rows;
    for (std::size_t i = 0; i < frontier.points.size(); ++i) {
        const auto& pt = frontier.points[i];
        ChartRow row;
        row.lambda_lo = pt.lambda_lo;
        row.lambda_hi = pt.lambda_hi;
        row.nominal_cost = dot(c_hat, pt.solution.x);
        row.f2 = pt.f2;
        row.solution_id = "s" + std::to_string(i);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string fmt_double(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string chart_csv(const std::vector<ChartRow>& rows) {
    std::string out = "lambda_lo,lambda_hi,nominal_cost,f2,solution_id\n";
    for (const auto& r : rows) {
        out += fmt_double(r.lambda_lo);
        out += ',';
        out += fmt_double(r.lambda_hi);
        out += ',';
        out += fmt_double(r.nominal_cost);
        out += ',';
        out += fmt_double(r.f2);
        out += ',';
        out += r.solution_id;
        out += '\n';
    }
    return out;
}

} // namespace varrob
