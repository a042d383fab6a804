#ifndef VARROB_INSTANCE_HPP
#define VARROB_INSTANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "varrob/common.hpp"

namespace varrob {

enum class Kind { ShortestPath, Assignment, Unconstrained };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

/// Directed arc; the element index of an arc is its position in
/// Instance::arcs.
struct Arc {
    int from = -1;
    int to = -1;
};

/// One linear row of a feasible-set description, sense 'G' (>=) or 'E' (=).
struct PolyRow {
    std::vector<std::pair<int, double>> coeffs;
    char sense = 'G';
    double rhs = 0.0;
};

/// Linear description { x : Ax >= b (senses per row), x in {0,1}^n }.
/// `integral_relaxation` asserts that the LP relaxation has integral
/// optimal vertices, which is what the duality-based inverse models need.
struct Polyhedron {
    std::vector<PolyRow> rows;
    bool integral_relaxation = false;
};

/// A feasible binary solution together with its cached nominal cost.
struct Solution {
    BinVec x;
    double c_hat_cost = 0.0;
};

/// A combinatorial minimization instance over a ground set of n binary
/// elements: a directed-graph shortest path, a p x p assignment (cells
/// row-major), or the unconstrained problem X = {0,1}^n.
///
/// Instances are immutable after construction and safe to share across
/// threads.
class Instance {
public:
    static Instance shortest_path(int num_nodes, std::vector<Arc> arcs,
                                  int source, int sink, Vec c_hat);
    static Instance assignment(int p, Vec c_hat);
    static Instance unconstrained(Vec c_hat);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    const Vec& c_hat() const { return c_hat_; }

    int num_nodes() const { return num_nodes_; }
    int source() const { return source_; }
    int sink() const { return sink_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    const std::vector<std::vector<int>>& out_arcs() const { return out_arcs_; }
    const std::vector<std::vector<int>>& in_arcs() const { return in_arcs_; }

    int p() const { return p_; }

    /// Feasible-set description: the canonical one for the kind, or the
    /// explicit override provided on construction/load.
    const Polyhedron& polyhedron() const { return poly_; }
    bool has_poly_override() const { return poly_override_; }
    void set_polyhedron(Polyhedron poly);

    bool is_feasible(const BinVec& x) const;

    /// Wraps an incidence vector, validating feasibility and caching the
    /// nominal cost.
    Solution make_solution(const BinVec& x) const;

    /// True when every component of c_hat is >= -kTol. Frontier-mode
    /// operations require this.
    bool nonnegative_costs() const;

private:
    Kind kind_ = Kind::Unconstrained;
    int n_ = 0;
    Vec c_hat_;

    int num_nodes_ = 0;
    int source_ = -1;
    int sink_ = -1;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_arcs_;
    std::vector<std::vector<int>> in_arcs_;

    int p_ = 0;

    Polyhedron poly_;
    bool poly_override_ = false;

    void build_canonical_polyhedron();
    void validate() const;
};

} // namespace varrob

#endif // VARROB_INSTANCE_HPP
