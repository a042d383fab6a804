#include "varrob/generators.hpp"

#include <algorithm>
#include <map>

#include "varrob/regret.hpp"
#include "varrob/solve.hpp"

namespace varrob {

Instance gen_assignment(int p, int c_max, std::uint64_t seed) {
    if (p < 2) throw Error("gen_assignment: p must be >= 2");
    if (c_max < 0) throw Error("gen_assignment: c_max must be >= 0");
    Rng rng(seed);
    Vec c(static_cast<std::size_t>(p) * p);
    for (auto& v : c) v = rng.uniform_int(0, c_max);
    return Instance::assignment(p, std::move(c));
}

namespace {

// Composition-tree node intervals: build arcs recursively, returning
// (source, sink) node ids allocated from a counter.
struct SpBuilder {
    std::vector<Arc> arcs;
    int next_node = 0;
    Rng& rng;

    explicit SpBuilder(Rng& r) : rng(r) {}

    std::pair<int, int> build(int leaves) {
        if (leaves == 1) {
            int s = next_node++;
            int t = next_node++;
            arcs.push_back({s, t});
            return {s, t};
        }
        int left = 1 + rng.uniform_int(0, leaves - 2);
        int right = leaves - left;
        auto [s1, t1] = build(left);
        auto [s2, t2] = build(right);
        bool series = rng.uniform_int(0, 1) == 0;
        if (series) {
            // Merge t1 with s2.
            relabel(s2, t1);
            return {s1, t2};
        }
        relabel(s2, s1);
        relabel(t2, t1);
        return {s1, t1};
    }

    void relabel(int from, int to) {
        for (auto& a : arcs) {
            if (a.from == from) a.from = to;
            if (a.to == from) a.to = to;
        }
    }
};

} // namespace

SeriesParallelInstance gen_series_parallel(int edge_ops, std::uint64_t seed, int c_lo,
                                           int c_hi) {
    if (edge_ops < 1) throw Error("gen_series_parallel: need at least one arc");
    Rng rng(seed);
    SpBuilder builder(rng);
    auto [s, t] = builder.build(edge_ops);
    // Compact node ids.
    std::map<int, int> remap;
    for (const auto& a : builder.arcs) {
        remap.emplace(a.from, 0);
        remap.emplace(a.to, 0);
    }
    int next = 0;
    for (auto& [old_id, new_id] : remap) new_id = next++;
    std::vector<Arc> arcs;
    for (const auto& a : builder.arcs) arcs.push_back({remap[a.from], remap[a.to]});
    Vec c(arcs.size());
    for (auto& v : c) v = rng.uniform_int(c_lo, c_hi);
    SeriesParallelInstance out{
        Instance::shortest_path(next, std::move(arcs), remap[s], remap[t], std::move(c)),
        next, edge_ops};
    return out;
}

LayeredInstance gen_layered(int layers, int width, std::uint64_t seed, int c_lo,
                            int c_hi) {
    if (layers < 1 || width < 1) throw Error("gen_layered: layers and width must be >= 1");
    Rng rng(seed);
    int num_nodes = 2 + layers * width;
    int s = 0, t = num_nodes - 1;
    auto node_of = [&](int layer, int j) { return 1 + layer * width + j; };
    std::vector<Arc> arcs;
    for (int j = 0; j < width; ++j) arcs.push_back({s, node_of(0, j)});
    for (int l = 0; l + 1 < layers; ++l)
        for (int i = 0; i < width; ++i)
            for (int j = 0; j < width; ++j) arcs.push_back({node_of(l, i), node_of(l + 1, j)});
    for (int j = 0; j < width; ++j) arcs.push_back({node_of(layers - 1, j), t});
    Vec c(arcs.size());
    for (auto& v : c) v = rng.uniform_int(c_lo, c_hi);
    return {Instance::shortest_path(num_nodes, std::move(arcs), s, t, std::move(c)),
            layers, width};
}

bool is_series_parallel(const Instance& inst) {
    if (inst.kind() != Kind::ShortestPath) return false;
    // Multigraph reduction: merge parallel arcs, contract degree-(1,1)
    // nodes, repeat. Series-parallel graphs collapse to one arc.
    struct Edge {
        int from, to;
        bool alive = true;
    };
    std::vector<Edge> edges;
    for (const auto& a : inst.arcs()) edges.push_back({a.from, a.to, true});
    int s = inst.source(), t = inst.sink();
    bool progress = true;
    while (progress) {
        progress = false;
        // Parallel merge.
        std::map<std::pair<int, int>, int> seen;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!edges[e].alive) continue;
            auto key = std::make_pair(edges[e].from, edges[e].to);
            auto it = seen.find(key);
            if (it != seen.end()) {
                edges[e].alive = false;
                progress = true;
            } else {
                seen.emplace(key, static_cast<int>(e));
            }
        }
        // Series contraction at interior nodes with in=out=1.
        std::map<int, std::pair<int, int>> in_deg_edge, out_deg_edge;
        std::map<int, int> in_deg, out_deg;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!edges[e].alive) continue;
            in_deg[edges[e].to]++;
            out_deg[edges[e].from]++;
            in_deg_edge[edges[e].to] = {static_cast<int>(e), 0};
            out_deg_edge[edges[e].from] = {static_cast<int>(e), 0};
        }
        for (const auto& [v, cnt] : in_deg) {
            if (v == s || v == t) continue;
            if (cnt != 1 || out_deg[v] != 1) continue;
            int ein = in_deg_edge[v].first;
            int eout = out_deg_edge[v].first;
            if (!edges[ein].alive || !edges[eout].alive) continue;
            if (edges[ein].from == edges[eout].to) continue; // would form a loop
            // Contract v: ein now runs from its tail to eout's head.
            edges[ein].to = edges[eout].to;
            edges[eout].alive = false;
            progress = true;
            break; // degree maps are stale; recompute
        }
    }
    int alive = 0;
    int from = -1, to = -1;
    for (const auto& e : edges)
        if (e.alive) {
            ++alive;
            from = e.from;
            to = e.to;
        }
    return alive == 1 && from == s && to == t;
}

Vec gen_weights(int n, int lo, int hi, std::uint64_t seed) {
    Rng rng(seed);
    Vec d(n);
    for (auto& v : d) v = rng.uniform_int(lo, hi);
    return d;
}

std::optional<Instance> gen_random_digraph(int nodes, std::uint64_t seed, int c_lo,
                                           int c_hi) {
    Rng rng(seed);
    std::vector<Arc> arcs;
    // Forward arcs keep the graph acyclic and every path simple; skip arcs
    // with probability ~1/2, always keeping some through-structure.
    for (int i = 0; i < nodes; ++i)
        for (int j = i + 1; j < nodes; ++j) {
            if (rng.uniform_int(0, 1) == 0) continue;
            arcs.push_back({i, j});
        }
    if (arcs.empty()) return std::nullopt;
    Vec c(arcs.size());
    for (auto& v : c) v = rng.uniform_int(c_lo, c_hi);
    try {
        return Instance::shortest_path(nodes, std::move(arcs), 0, nodes - 1, std::move(c));
    } catch (const Error&) {
        return std::nullopt; // sink unreachable for this seed
    }
}

std::optional<NonmonotoneSearchResult> find_regret_nonmonotone_instance(
    int nodes, std::uint64_t max_seeds) {
    for (std::uint64_t seed = 0; seed < max_seeds; ++seed) {
        auto maybe = gen_random_digraph(nodes, seed);
        if (!maybe) continue;
        const Instance& inst = *maybe;
        std::vector<Solution> paths;
        try {
            paths = enumerate_feasible(inst, 4096);
        } catch (const Error&) {
            continue;
        }
        if (paths.size() < 3) continue;
        Solution x_hat = solve_nominal(inst, inst.c_hat());

        // Quick screen on a coarse grid before the exact scan.
        auto regret_optimal_at = [&](double lambda) {
            double own = regret_regular(inst, x_hat, lambda);
            for (const auto& p : paths)
                if (regret_regular(inst, p, lambda) < own - 1e-9) return false;
            return true;
        };
        if (!regret_optimal_at(1.0)) continue;
        bool lost_interior = false;
        double bad = 0.0;
        for (int g = 1; g < 10 && !lost_interior; ++g) {
            double lambda = g / 10.0;
            if (!regret_optimal_at(lambda)) {
                lost_interior = true;
                bad = lambda;
            }
        }
        if (!lost_interior) continue;
        return NonmonotoneSearchResult{inst, seed, bad};
    }
    return std::nullopt;
}

} // namespace varrob
