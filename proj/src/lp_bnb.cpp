#include "varrob/lp.hpp"

#include <algorithm>
#include <queue>

namespace varrob {

namespace {

struct Node {
    double bound = 0.0; // minimization bound from the node relaxation
    long seq = 0;
    std::vector<std::pair<int, int>> fixings;
    Vec x; // relaxation solution

    bool operator>(const Node& o) const {
        if (bound != o.bound) return bound > o.bound;
        return seq > o.seq;
    }
};

int most_fractional(const Vec& x, const std::vector<int>& binaries, double int_tol) {
    int pick = -1;
    double best = int_tol;
    for (int j : binaries) {
        double frac = std::fabs(x[j] - std::round(x[j]));
        if (frac > best) {
            best = frac;
            pick = j;
        }
    }
    return pick;
}

} // namespace

BnbResult branch_and_bound(const MilpModel& model, const BnbOptions& opts) {
    model.validate();
    const bool maximize = model.lp.sense == LinearProgram::Sense::Max;
    const double flip = maximize ? -1.0 : 1.0;

    LinearProgram work = model.lp;

    auto solve_node = [&](const std::vector<std::pair<int, int>>& fixings,
                          SimplexResult* out) {
        std::vector<std::pair<int, std::pair<double, double>>> saved;
        saved.reserve(fixings.size());
        for (auto [j, v] : fixings) {
            saved.push_back({j, {work.vars[j].lb, work.vars[j].ub}});
            work.vars[j].lb = v;
            work.vars[j].ub = v;
        }
        *out = simplex_solve(work);
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            work.vars[it->first].lb = it->second.first;
            work.vars[it->first].ub = it->second.second;
        }
    };

    BnbResult res;
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
    long seq = 0;
    long nodes = 0;

    SimplexResult root;
    solve_node({}, &root);
    ++nodes;
    if (root.status == LpStatus::Infeasible) {
        res.status = MilpStatus::Infeasible;
        res.nodes = nodes;
        return res;
    }
    if (root.status == LpStatus::Unbounded) {
        res.status = MilpStatus::Unbounded;
        res.nodes = nodes;
        return res;
    }
    if (root.status != LpStatus::Optimal)
        throw Error("branch_and_bound: root relaxation failed: " + root.message);

    double incumbent_obj = kInf; // minimization scale
    Vec incumbent_x;
    bool have_incumbent = false;

    Node root_node;
    root_node.bound = flip * root.objective;
    root_node.seq = seq++;
    root_node.x = root.x;
    open.push(std::move(root_node));

    bool budget_hit = false;
    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (have_incumbent && node.bound >= incumbent_obj - 1e-9) {
            // Best-bound order: everything else is no better.
            break;
        }
        int branch_var = most_fractional(node.x, model.binaries, opts.int_tol);
        if (branch_var == -1) {
            if (node.bound < incumbent_obj - 1e-9) {
                incumbent_obj = node.bound;
                incumbent_x = node.x;
                for (int j : model.binaries)
                    incumbent_x[j] = std::round(incumbent_x[j]);
                have_incumbent = true;
            }
            continue;
        }
        if (nodes + 2 > opts.max_nodes) {
            budget_hit = true;
            // Put the node back so the reported bound stays valid.
            open.push(std::move(node));
            break;
        }
        for (int v = 0; v <= 1; ++v) {
            auto fixings = node.fixings;
            fixings.push_back({branch_var, v});
            SimplexResult child;
            solve_node(fixings, &child);
            ++nodes;
            if (child.status == LpStatus::Infeasible) continue;
            if (child.status != LpStatus::Optimal)
                throw Error("branch_and_bound: node relaxation failed: " + child.message);
            double bound = flip * child.objective;
            if (have_incumbent && bound >= incumbent_obj - 1e-9) continue;
            Node nn;
            nn.bound = bound;
            nn.seq = seq++;
            nn.fixings = std::move(fixings);
            nn.x = std::move(child.x);
            open.push(std::move(nn));
        }
    }

    res.nodes = nodes;
    res.has_incumbent = have_incumbent;
    if (budget_hit) {
        res.status = MilpStatus::BudgetExhausted;
        double best_open = open.empty() ? incumbent_obj : open.top().bound;
        res.bound = flip * std::min(best_open, incumbent_obj);
        if (have_incumbent) {
            res.objective = flip * incumbent_obj;
            res.x = std::move(incumbent_x);
        }
        return res;
    }
    if (!have_incumbent) {
        res.status = MilpStatus::Infeasible;
        return res;
    }
    res.status = MilpStatus::Optimal;
    res.objective = flip * incumbent_obj;
    res.bound = res.objective;
    res.x = std::move(incumbent_x);
    return res;
}

} // namespace varrob
