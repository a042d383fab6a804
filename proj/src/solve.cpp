#include "varrob/solve.hpp"

#include <algorithm>
#include <queue>

namespace varrob {

namespace detail {

Vec dijkstra(const Instance& inst, const Vec& costs, int root, bool reverse,
             const std::vector<std::uint8_t>* alive) {
    const int nn = inst.num_nodes();
    Vec dist(nn, kInf);
    dist[root] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0.0, root});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        const auto& adj = reverse ? inst.in_arcs()[v] : inst.out_arcs()[v];
        for (int e : adj) {
            if (alive && !(*alive)[e]) continue;
            int w = reverse ? inst.arcs()[e].from : inst.arcs()[e].to;
            double c = std::max(0.0, costs[e]);
            if (dist[v] + c < dist[w]) {
                dist[w] = dist[v] + c;
                pq.push({dist[w], w});
            }
        }
    }
    return dist;
}

AssignResult hungarian(int p, const Vec& costs) {
    // Shortest-augmenting-path method with dual potentials; O(p^3).
    // Costs may be negative. Forbidden cells carry kForbiddenCost.
    const int n = p;
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> matched(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        matched[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            int i0 = matched[j0], j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = costs[(i0 - 1) * p + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[matched[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (matched[j0] != 0);
        do {
            int j1 = way[j0];
            matched[j0] = matched[j1];
            j0 = j1;
        } while (j0);
    }
    AssignResult res;
    res.row_to_col.assign(p, -1);
    res.u.assign(p, 0.0);
    res.v.assign(p, 0.0);
    for (int j = 1; j <= n; ++j) res.row_to_col[matched[j] - 1] = j - 1;
    for (int i = 1; i <= n; ++i) res.u[i - 1] = u[i];
    for (int j = 1; j <= n; ++j) res.v[j - 1] = v[j];
    res.value = 0.0;
    for (int i = 0; i < p; ++i) res.value += costs[i * p + res.row_to_col[i]];
    return res;
}

namespace {

bool reachable(const Instance& inst, const std::vector<std::uint8_t>& alive) {
    std::vector<char> seen(inst.num_nodes(), 0);
    std::queue<int> q;
    q.push(inst.source());
    seen[inst.source()] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (v == inst.sink()) return true;
        for (int e : inst.out_arcs()[v]) {
            if (!alive[e]) continue;
            int w = inst.arcs()[e].to;
            if (!seen[w]) {
                seen[w] = 1;
                q.push(w);
            }
        }
    }
    return false;
}

// Arcs tight for the distance labels: dist[u] + c_e == dist[v]. Every
// optimal simple path uses tight arcs only, and every s-t path inside the
// tight subgraph telescopes to the optimal cost.
std::vector<std::uint8_t> tight_arcs(const Instance& inst, const Vec& costs,
                                     const Vec& dist_s,
                                     const std::vector<std::uint8_t>* within) {
    std::vector<std::uint8_t> tight(inst.n(), 0);
    for (int e = 0; e < inst.n(); ++e) {
        if (within && !(*within)[e]) continue;
        const Arc& a = inst.arcs()[e];
        if (dist_s[a.from] == kInf) continue;
        double c = std::max(0.0, costs[e]);
        if (std::fabs(dist_s[a.from] + c - dist_s[a.to]) <= 1e-9) tight[e] = 1;
    }
    return tight;
}

// Lexicographically smallest s-t path within `alive`, assuming every s-t
// path inside `alive` is optimal (a tight subgraph). Greedy deletion in
// index order: an arc is dropped permanently whenever connectivity
// survives without it, which decides x_e = 0 exactly when some optimal
// path avoids arc e.
BinVec lex_min_path_within(const Instance& inst, std::vector<std::uint8_t> alive) {
    for (int e = 0; e < inst.n(); ++e) {
        if (!alive[e]) continue;
        alive[e] = 0;
        if (!reachable(inst, alive)) alive[e] = 1;
    }
    BinVec x(inst.n(), 0);
    int v = inst.source();
    std::vector<char> guard(inst.num_nodes(), 0);
    while (v != inst.sink()) {
        if (guard[v]) throw Error("internal: cycle while extracting path");
        guard[v] = 1;
        int chosen = -1;
        for (int e : inst.out_arcs()[v])
            if (alive[e]) {
                chosen = e;
                break;
            }
        if (chosen == -1) throw Error("internal: dead end while extracting path");
        x[chosen] = 1;
        v = inst.arcs()[chosen].to;
    }
    return x;
}

BinVec lex_min_optimal_path(const Instance& inst, const Vec& costs) {
    Vec dist_s = dijkstra(inst, costs, inst.source(), false);
    if (dist_s[inst.sink()] == kInf) throw Error("no path from source to sink");
    auto alive = tight_arcs(inst, costs, dist_s, nullptr);
    return lex_min_path_within(inst, alive);
}

// Lexicographically smallest optimal assignment. Cells are decided in
// index order; excluding a cell is a forbidden-cost re-solve, forcing one
// in excludes all alternatives in its row and column.
BinVec lex_min_optimal_assignment(int p, Vec work, double opt_value) {
    BinVec x(static_cast<std::size_t>(p) * p, 0);
    for (int idx = 0; idx < p * p; ++idx) {
        int i = idx / p, j = idx % p;
        if (work[idx] >= detail::kForbiddenCost / 2) continue;
        double saved = work[idx];
        work[idx] = detail::kForbiddenCost;
        double val = hungarian(p, work).value;
        if (val <= opt_value + 1e-7) continue; // excluded for good
        work[idx] = saved;
        x[idx] = 1;
        for (int k = 0; k < p; ++k) {
            if (k != j) work[i * p + k] = detail::kForbiddenCost;
            if (k != i) work[k * p + j] = detail::kForbiddenCost;
        }
    }
    return x;
}

BinVec sign_rule(const Vec& costs) {
    BinVec x(costs.size(), 0);
    for (std::size_t i = 0; i < costs.size(); ++i)
        if (costs[i] <= kTol) x[i] = 1;
    return x;
}

void check_dims(const Instance& inst, const Vec& costs, const char* what) {
    if (static_cast<int>(costs.size()) != inst.n())
        throw Error(std::string(what) + ": cost vector length does not match instance");
}

void check_nonneg(const Instance& inst, const Vec& costs, const char* what) {
    if (inst.kind() == Kind::Unconstrained) return;
    for (double c : costs)
        if (c < -kTol)
            throw Error(std::string(what) +
                        ": negative cost passed to a nonnegative-only kind");
}

} // namespace

BinVec lex_min_path_restricted(const Instance& inst, const Vec& costs,
                               const std::vector<std::uint8_t>& alive) {
    Vec dist_s = dijkstra(inst, costs, inst.source(), false, &alive);
    if (dist_s[inst.sink()] == kInf)
        throw Error("no path from source to sink within restriction");
    auto tight = tight_arcs(inst, costs, dist_s, &alive);
    return lex_min_path_within(inst, tight);
}

bool lex_min_assignment_restricted(int p, const Vec& costs, BinVec* out,
                                   double* value) {
    double opt = hungarian(p, costs).value;
    if (opt >= kForbiddenCost / 2) return false;
    if (value) *value = opt;
    if (out) *out = lex_min_optimal_assignment(p, costs, opt);
    return true;
}

} // namespace detail

Solution solve_nominal(const Instance& inst, const Vec& costs, const Solution* preferred) {
    detail::check_dims(inst, costs, "solve_nominal");
    detail::check_nonneg(inst, costs, "solve_nominal");
    BinVec x;
    switch (inst.kind()) {
        case Kind::Unconstrained:
            x = detail::sign_rule(costs);
            break;
        case Kind::ShortestPath:
            x = detail::lex_min_optimal_path(inst, costs);
            break;
        case Kind::Assignment: {
            double opt = detail::hungarian(inst.p(), costs).value;
            if (opt >= detail::kForbiddenCost / 2)
                throw Error("solve_nominal: assignment has no feasible matching");
            x = detail::lex_min_optimal_assignment(inst.p(), costs, opt);
            break;
        }
    }
    double best = dot(costs, x);
    if (preferred && inst.is_feasible(preferred->x) &&
        dot(costs, preferred->x) <= best + kTol)
        return inst.make_solution(preferred->x);
    return inst.make_solution(x);
}

Solution solve_weighted_sum(const Instance& inst, const Vec& f1, const Vec& f2,
                            double lambda, WeightedMode mode) {
    detail::check_dims(inst, f1, "solve_weighted_sum");
    detail::check_dims(inst, f2, "solve_weighted_sum");
    if (lambda < 0.0) throw Error("solve_weighted_sum: lambda must be >= 0");

    if (mode == WeightedMode::Plain) {
        Vec combined(f1.size());
        for (std::size_t i = 0; i < f1.size(); ++i) combined[i] = f1[i] + lambda * f2[i];
        return solve_nominal(inst, combined);
    }

    const Vec& a = mode == WeightedMode::LexF1 ? f1 : f2;
    const Vec& b = mode == WeightedMode::LexF1 ? f2 : f1;

    switch (inst.kind()) {
        case Kind::Unconstrained: {
            BinVec x(inst.n(), 0);
            for (int i = 0; i < inst.n(); ++i) {
                if (a[i] < -kTol)
                    x[i] = 1;
                else if (std::fabs(a[i]) <= kTol && b[i] < -kTol)
                    x[i] = 1;
            }
            return inst.make_solution(x);
        }
        case Kind::ShortestPath: {
            detail::check_nonneg(inst, a, "solve_weighted_sum");
            detail::check_nonneg(inst, b, "solve_weighted_sum");
            Vec dist1 = detail::dijkstra(inst, a, inst.source(), false);
            if (dist1[inst.sink()] == kInf) throw Error("no path from source to sink");
            auto alive1 = detail::tight_arcs(inst, a, dist1, nullptr);
            Vec dist2 = detail::dijkstra(inst, b, inst.source(), false, &alive1);
            auto alive2 = detail::tight_arcs(inst, b, dist2, &alive1);
            return inst.make_solution(detail::lex_min_path_within(inst, alive2));
        }
        case Kind::Assignment: {
            detail::check_nonneg(inst, a, "solve_weighted_sum");
            detail::check_nonneg(inst, b, "solve_weighted_sum");
            auto first = detail::hungarian(inst.p(), a);
            // Complementary slackness: optimal assignments for the first
            // criterion are exactly the perfect matchings inside the
            // zero-reduced-cost cells.
            Vec restricted = b;
            for (int i = 0; i < inst.p(); ++i)
                for (int j = 0; j < inst.p(); ++j) {
                    double red = a[i * inst.p() + j] - first.u[i] - first.v[j];
                    if (red > 1e-7) restricted[i * inst.p() + j] = detail::kForbiddenCost;
                }
            double opt2 = detail::hungarian(inst.p(), restricted).value;
            return inst.make_solution(
                detail::lex_min_optimal_assignment(inst.p(), restricted, opt2));
        }
    }
    throw Error("solve_weighted_sum: bad kind");
}

namespace {

void enumerate_paths(const Instance& inst, int v, std::vector<char>& visited,
                     BinVec& current, std::vector<BinVec>& out, std::size_t limit) {
    if (v == inst.sink()) {
        if (out.size() >= limit)
            throw Error("enumerate_feasible: feasible set too large for limit");
        out.push_back(current);
        return;
    }
    visited[v] = 1;
    for (int e : inst.out_arcs()[v]) {
        int w = inst.arcs()[e].to;
        if (visited[w]) continue;
        current[e] = 1;
        enumerate_paths(inst, w, visited, current, out, limit);
        current[e] = 0;
    }
    visited[v] = 0;
}

} // namespace

std::vector<Solution> enumerate_feasible(const Instance& inst, std::size_t limit) {
    std::vector<BinVec> vecs;
    switch (inst.kind()) {
        case Kind::Unconstrained: {
            if (inst.n() >= 63 || (std::uint64_t{1} << inst.n()) > limit)
                throw Error("enumerate_feasible: feasible set too large for limit");
            std::uint64_t total = std::uint64_t{1} << inst.n();
            for (std::uint64_t m = 0; m < total; ++m) {
                BinVec x(inst.n(), 0);
                for (int j = 0; j < inst.n(); ++j)
                    x[j] = (m >> (inst.n() - 1 - j)) & 1u;
                vecs.push_back(std::move(x));
            }
            break;
        }
        case Kind::Assignment: {
            std::size_t count = 1;
            for (int k = 2; k <= inst.p(); ++k) {
                count *= static_cast<std::size_t>(k);
                if (count > limit)
                    throw Error("enumerate_feasible: feasible set too large for limit");
            }
            std::vector<int> perm(inst.p());
            for (int i = 0; i < inst.p(); ++i) perm[i] = i;
            do {
                BinVec x(inst.n(), 0);
                for (int i = 0; i < inst.p(); ++i) x[i * inst.p() + perm[i]] = 1;
                vecs.push_back(std::move(x));
            } while (std::next_permutation(perm.begin(), perm.end()));
            break;
        }
        case Kind::ShortestPath: {
            std::vector<char> visited(inst.num_nodes(), 0);
            BinVec current(inst.n(), 0);
            enumerate_paths(inst, inst.source(), visited, current, vecs, limit);
            break;
        }
    }
    std::sort(vecs.begin(), vecs.end(), lex_less);
    std::vector<Solution> out;
    out.reserve(vecs.size());
    for (auto& x : vecs) out.push_back(inst.make_solution(x));
    return out;
}

Solution solve_scenario_min(const Instance& inst, const Vec& costs,
                            std::size_t enum_limit) {
    detail::check_dims(inst, costs, "solve_scenario_min");
    switch (inst.kind()) {
        case Kind::Unconstrained:
            return inst.make_solution(detail::sign_rule(costs));
        case Kind::Assignment: {
            auto res = detail::hungarian(inst.p(), costs);
            BinVec x(inst.n(), 0);
            for (int i = 0; i < inst.p(); ++i) x[i * inst.p() + res.row_to_col[i]] = 1;
            return inst.make_solution(x);
        }
        case Kind::ShortestPath: {
            bool nonneg = true;
            for (double c : costs)
                if (c < -kTol) nonneg = false;
            if (nonneg)
                return inst.make_solution(detail::lex_min_optimal_path(inst, costs));
            // Negative arc costs: label setting no longer applies, fall
            // back to exhaustive path enumeration.
            auto all = enumerate_feasible(inst, enum_limit);
            const Solution* best = nullptr;
            double best_val = kInf;
            for (const auto& s : all) {
                double v = dot(costs, s.x);
                if (v < best_val - kTol) {
                    best_val = v;
                    best = &s;
                }
            }
            return *best;
        }
    }
    throw Error("solve_scenario_min: bad kind");
}

} // namespace varrob
