#include "varrob/instance.hpp"

#include <algorithm>
#include <queue>

namespace varrob {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::ShortestPath: return "shortest-path";
        case Kind::Assignment: return "assignment";
        case Kind::Unconstrained: return "unconstrained";
    }
    throw Error("kind_name: bad kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "shortest-path") return Kind::ShortestPath;
    if (name == "assignment") return Kind::Assignment;
    if (name == "unconstrained") return Kind::Unconstrained;
    throw Error("unknown instance kind: '" + name + "'");
}

Instance Instance::shortest_path(int num_nodes, std::vector<Arc> arcs,
                                 int source, int sink, Vec c_hat) {
    Instance inst;
    inst.kind_ = Kind::ShortestPath;
    inst.n_ = static_cast<int>(arcs.size());
    inst.c_hat_ = std::move(c_hat);
    inst.num_nodes_ = num_nodes;
    inst.source_ = source;
    inst.sink_ = sink;
    inst.arcs_ = std::move(arcs);
    inst.out_arcs_.assign(num_nodes, {});
    inst.in_arcs_.assign(num_nodes, {});
    for (int e = 0; e < inst.n_; ++e) {
        const Arc& a = inst.arcs_[e];
        if (a.from < 0 || a.from >= num_nodes || a.to < 0 || a.to >= num_nodes)
            throw Error("shortest_path: arc endpoint out of range");
        inst.out_arcs_[a.from].push_back(e);
        inst.in_arcs_[a.to].push_back(e);
    }
    inst.validate();
    inst.build_canonical_polyhedron();
    return inst;
}

Instance Instance::assignment(int p, Vec c_hat) {
    Instance inst;
    inst.kind_ = Kind::Assignment;
    inst.p_ = p;
    inst.n_ = p * p;
    inst.c_hat_ = std::move(c_hat);
    inst.validate();
    inst.build_canonical_polyhedron();
    return inst;
}

Instance Instance::unconstrained(Vec c_hat) {
    Instance inst;
    inst.kind_ = Kind::Unconstrained;
    inst.n_ = static_cast<int>(c_hat.size());
    inst.c_hat_ = std::move(c_hat);
    inst.validate();
    inst.build_canonical_polyhedron();
    return inst;
}

void Instance::validate() const {
    if (n_ < 1) throw Error("instance must have at least one element");
    if (static_cast<int>(c_hat_.size()) != n_)
        throw Error("c_hat length does not match ground-set size");
    for (double c : c_hat_)
        if (!std::isfinite(c)) throw Error("c_hat has a non-finite entry");

    if (kind_ == Kind::ShortestPath) {
        if (num_nodes_ < 2) throw Error("shortest-path instance needs >= 2 nodes");
        if (source_ < 0 || source_ >= num_nodes_ || sink_ < 0 || sink_ >= num_nodes_)
            throw Error("source/sink out of range");
        if (source_ == sink_) throw Error("source and sink must differ");
        // Reachability check: at least one s-t path must exist.
        std::vector<char> seen(num_nodes_, 0);
        std::queue<int> q;
        q.push(source_);
        seen[source_] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : out_arcs_[v]) {
                int w = arcs_[e].to;
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
            }
        }
        if (!seen[sink_]) throw Error("no path from source to sink");
    } else if (kind_ == Kind::Assignment) {
        if (p_ < 1) throw Error("assignment dimension must be >= 1");
        if (n_ != p_ * p_) throw Error("assignment ground set must have p*p elements");
    }
}

void Instance::build_canonical_polyhedron() {
    Polyhedron poly;
    poly.integral_relaxation = true;
    switch (kind_) {
        case Kind::Assignment: {
            for (int i = 0; i < p_; ++i) {
                PolyRow row;
                row.sense = 'E';
                row.rhs = 1.0;
                for (int j = 0; j < p_; ++j) row.coeffs.push_back({i * p_ + j, 1.0});
                poly.rows.push_back(std::move(row));
            }
            for (int j = 0; j < p_; ++j) {
                PolyRow row;
                row.sense = 'E';
                row.rhs = 1.0;
                for (int i = 0; i < p_; ++i) row.coeffs.push_back({i * p_ + j, 1.0});
                poly.rows.push_back(std::move(row));
            }
            break;
        }
        case Kind::ShortestPath: {
            // Flow conservation; cycles are not excluded by the rows, but
            // with nonnegative costs any optimal vertex is a simple path.
            for (int v = 0; v < num_nodes_; ++v) {
                PolyRow row;
                row.sense = 'E';
                row.rhs = v == source_ ? 1.0 : (v == sink_ ? -1.0 : 0.0);
                for (int e : out_arcs_[v]) row.coeffs.push_back({e, 1.0});
                for (int e : in_arcs_[v]) row.coeffs.push_back({e, -1.0});
                std::sort(row.coeffs.begin(), row.coeffs.end());
                poly.rows.push_back(std::move(row));
            }
            break;
        }
        case Kind::Unconstrained: {
            for (int i = 0; i < n_; ++i) {
                PolyRow row;
                row.sense = 'G';
                row.rhs = -1.0;
                row.coeffs.push_back({i, -1.0});
                poly.rows.push_back(std::move(row));
            }
            break;
        }
    }
    poly_ = std::move(poly);
}

void Instance::set_polyhedron(Polyhedron poly) {
    for (const PolyRow& row : poly.rows) {
        if (row.sense != 'G' && row.sense != 'E')
            throw Error("polyhedron row sense must be 'G' or 'E'");
        for (auto [idx, coef] : row.coeffs) {
            if (idx < 0 || idx >= n_) throw Error("polyhedron coefficient index out of range");
            if (!std::isfinite(coef)) throw Error("polyhedron coefficient not finite");
        }
    }
    poly_ = std::move(poly);
    poly_override_ = true;
}

bool Instance::is_feasible(const BinVec& x) const {
    if (static_cast<int>(x.size()) != n_) return false;
    switch (kind_) {
        case Kind::Unconstrained:
            return true;
        case Kind::Assignment: {
            std::vector<int> row_cnt(p_, 0), col_cnt(p_, 0);
            for (int i = 0; i < p_; ++i)
                for (int j = 0; j < p_; ++j)
                    if (x[i * p_ + j]) {
                        ++row_cnt[i];
                        ++col_cnt[j];
                    }
            for (int i = 0; i < p_; ++i)
                if (row_cnt[i] != 1 || col_cnt[i] != 1) return false;
            return true;
        }
        case Kind::ShortestPath: {
            // The support must be exactly a simple source-sink path: walk
            // from the source along the unique outgoing support arc; if the
            // walk reaches the sink having consumed every support arc, the
            // support is such a path.
            int support = 0;
            for (int e = 0; e < n_; ++e)
                if (x[e]) ++support;
            if (support == 0) return false;
            int v = source_;
            std::vector<char> visited(num_nodes_, 0);
            int walked = 0;
            while (v != sink_) {
                if (visited[v]) return false;
                visited[v] = 1;
                int next_arc = -1;
                for (int e : out_arcs_[v])
                    if (x[e]) {
                        if (next_arc != -1) return false;
                        next_arc = e;
                    }
                if (next_arc == -1) return false;
                v = arcs_[next_arc].to;
                ++walked;
            }
            return walked == support;
        }
    }
    return false;
}

Solution Instance::make_solution(const BinVec& x) const {
    if (!is_feasible(x)) throw Error("make_solution: infeasible incidence vector");
    Solution s;
    s.x = x;
    s.c_hat_cost = dot(c_hat_, x);
    return s;
}

bool Instance::nonnegative_costs() const {
    for (double c : c_hat_)
        if (c < -kTol) return false;
    return true;
}

} // namespace varrob
