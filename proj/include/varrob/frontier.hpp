#ifndef VARROB_FRONTIER_HPP
#define VARROB_FRONTIER_HPP

#include <functional>
#include <string>
#include <vector>

#include "varrob/solve.hpp"
#include "varrob/uncertainty.hpp"

namespace varrob {

/// One solution on the robust frontier: its bicriteria image (f1, f2) and
/// the budget interval [lambda_lo, lambda_hi] on which it is optimal
/// (lambda_hi may be kInf).
struct FrontierPoint {
    Solution solution;
    double f1 = 0.0;
    double f2 = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = kInf;
};

/// The minimal robust solution set, ordered by strictly increasing f1 and
/// strictly decreasing f2; consecutive slopes strictly increase (the
/// points are vertices of the lower-left hull) and the lambda intervals
/// partition [0, inf).
struct Frontier {
    std::vector<FrontierPoint> points;

    std::size_t size() const { return points.size(); }
    /// Throws when the structural invariants above are violated.
    void validate() const;
};

struct ExploreStats {
    int weighted_solves = 0;
    int max_depth = 0;
};

/// Weighted-sum oracle for the bicriteria problem min (f1(x), f2(x)):
/// plain solves of f1 + lambda*f2 plus exact lexicographic endpoint
/// solves. The max-form second criterion gets its own implementation
/// because it is not linear.
class BicriteriaOracle {
public:
    virtual ~BicriteriaOracle() = default;
    virtual Solution solve(double lambda) = 0;
    virtual Solution solve_lex_f1() = 0;
    virtual Solution solve_lex_f2() = 0;
    virtual double eval_f1(const Solution& s) const = 0;
    virtual double eval_f2(const Solution& s) const = 0;
};

/// Linear second criterion f2 = f2_costs^t x.
class LinearOracle final : public BicriteriaOracle {
public:
    LinearOracle(const Instance& inst, Vec f1_costs, Vec f2_costs);
    Solution solve(double lambda) override;
    Solution solve_lex_f1() override;
    Solution solve_lex_f2() override;
    double eval_f1(const Solution& s) const override { return dot(f1_, s.x); }
    double eval_f2(const Solution& s) const override { return dot(f2_, s.x); }

private:
    const Instance& inst_;
    Vec f1_, f2_;
};

/// Max-form second criterion f2 = max_i d_i x_i. Weighted-sum subproblems
/// iterate over the distinct thresholds of d: restrict to elements with
/// d_i <= theta, solve the nominal problem, and score with the achieved
/// maximum.
class MaxCriterionOracle final : public BicriteriaOracle {
public:
    MaxCriterionOracle(const Instance& inst, Vec f1_costs, Vec d);
    Solution solve(double lambda) override;
    Solution solve_lex_f1() override;
    Solution solve_lex_f2() override;
    double eval_f1(const Solution& s) const override { return dot(f1_, s.x); }
    double eval_f2(const Solution& s) const override;

private:
    const Instance& inst_;
    Vec f1_, d_;
    std::vector<double> thresholds_; // sorted distinct values of {0} + d

    /// Restricted nominal solve; returns false when the restriction is
    /// infeasible for this kind.
    bool solve_restricted(double theta, const Vec& costs, Solution* out) const;
};

/// Recursive frontier search between the two lexicographic endpoints.
/// Equivalent solutions are deduplicated (keeping the lexicographically
/// smallest) and points interior to hull edges are removed.
Frontier explore(const Instance& inst, BicriteriaOracle& oracle,
                 ExploreStats* stats = nullptr);
Frontier explore(const Instance& inst, const Vec& f1_costs, const Vec& f2_costs,
                 ExploreStats* stats = nullptr);

/// Full dispatch over uncertainty shapes. The ellipsoid route enumerates
/// the feasible set and throws when it exceeds `enum_limit`.
Frontier solve_variable_sized(const Instance& inst, const Shape& shape,
                              std::size_t enum_limit = 100000);

/// Bicriteria labeling over (path cost, edge count).
Frontier label_hops(const Instance& inst);

/// Bicriteria labeling over (path cost, most expensive arc w.r.t. d).
Frontier label_maxedge(const Instance& inst, const Vec& d);

/// Re-evaluates f2 through a monotone transform and keeps the points that
/// remain hull vertices; the result is always a subset of the input.
Frontier concave_filter(const Frontier& input,
                        const std::function<double(double)>& transform);

struct FrontierMeta {
    std::string graph_class; // constant-growth | manhattan | series-parallel | layered
    int n = 0;
    int distinct_d = 0;
    int num_nodes = 0;
    int num_arcs = 0;
    int layers = 0;
    int width = 0;
};

struct BoundCheck {
    std::string graph_class;
    double bound = 0.0;
    int observed = 0;
    bool pass = false;
};

/// Checks |frontier| against the structural bound for the declared graph
/// class: n (constant growth), distinct d values (max criterion),
/// M - N + 2 (series-parallel), (2w)^ceil(log2(l+1)) (layered).
BoundCheck check_frontier_bounds(const Frontier& frontier, const FrontierMeta& meta);

struct ChartRow {
    double lambda_lo = 0.0;
    double lambda_hi = kInf;
    double nominal_cost = 0.0;
    double f2 = 0.0;
    std::string solution_id;
};

/// One row per frontier point, ordered by lambda_lo.
std::vector<ChartRow> robustness_chart(const Frontier& frontier, const Vec& c_hat);

/// CSV with header lambda_lo,lambda_hi,nominal_cost,f2,solution_id.
/// Infinite bounds print as "inf".
std::string chart_csv(const std::vector<ChartRow>& rows);

namespace detail {

/// Builds a frontier from an explicit candidate set: sorts by (f1, f2),
/// drops dominated and equivalent points, keeps lower-left hull vertices,
/// and assigns the lambda intervals.
Frontier frontier_from_candidates(std::vector<Solution> solutions,
                                  std::vector<double> f1, std::vector<double> f2);

} // namespace detail

} // namespace varrob

#endif // VARROB_FRONTIER_HPP
