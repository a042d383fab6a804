#ifndef VARROB_SOLVE_HPP
#define VARROB_SOLVE_HPP

#include <optional>
#include <vector>

#include "varrob/instance.hpp"

namespace varrob {

enum class WeightedMode { Plain, LexF1, LexF2 };

/// Minimizes costs^t x over the feasible set.
///
/// Shortest path uses a label-setting method, assignment a shortest
/// augmenting path method, and the unconstrained kind the sign rule
/// x_i = 1 iff costs_i <= 0. Ties are broken deterministically: the
/// lexicographically smallest incidence vector among the optima is
/// returned, unless `preferred` names an optimal solution, in which case
/// that one is returned instead.
Solution solve_nominal(const Instance& inst, const Vec& costs,
                       const Solution* preferred = nullptr);

/// Minimizes f1^t x + lambda * f2^t x (Plain), or optimizes the two
/// criteria in exact lexicographic order (LexF1 minimizes f1 first, LexF2
/// minimizes f2 first). Lexicographic comparison replaces the usual
/// "sufficiently small weight" trick, so endpoints are exact.
Solution solve_weighted_sum(const Instance& inst, const Vec& f1, const Vec& f2,
                            double lambda, WeightedMode mode = WeightedMode::Plain);

/// Every feasible solution exactly once, sorted lexicographically by
/// incidence vector. Throws when the feasible set exceeds `limit`
/// (never truncates).
std::vector<Solution> enumerate_feasible(const Instance& inst, std::size_t limit);

/// Optimal value and minimizer for an arbitrary (possibly negative) cost
/// vector. Assignment shifts costs row-wise to stay exact; shortest path
/// falls back to enumeration when negative costs rule out label setting.
/// Used by regret evaluation, where perturbed scenarios can go negative.
Solution solve_scenario_min(const Instance& inst, const Vec& costs,
                            std::size_t enum_limit = 200000);

namespace detail {

/// Distances from `root` with nonnegative arc costs; unreachable nodes get
/// kInf. `reverse` traverses arcs backwards; `alive` masks arcs out.
Vec dijkstra(const Instance& inst, const Vec& costs, int root, bool reverse,
             const std::vector<std::uint8_t>* alive = nullptr);

struct AssignResult {
    double value = 0.0;
    std::vector<int> row_to_col;
    Vec u, v; // dual potentials, value == sum(u) + sum(v)
};

/// Min-cost perfect matching on a p x p cost matrix (row-major). Costs may
/// be negative. Cells priced at kForbiddenCost act as missing; a returned
/// value >= kForbiddenCost/2 means no finite matching exists.
AssignResult hungarian(int p, const Vec& costs);

inline constexpr double kForbiddenCost = 1e17;

/// Lexicographically smallest optimal s-t path using only arcs with
/// alive[e] != 0. Throws when the restriction disconnects the terminals.
BinVec lex_min_path_restricted(const Instance& inst, const Vec& costs,
                               const std::vector<std::uint8_t>& alive);

/// Lexicographically smallest optimal assignment for a cost matrix that
/// may contain kForbiddenCost cells. Returns false when no finite
/// matching exists.
bool lex_min_assignment_restricted(int p, const Vec& costs, BinVec* out,
                                   double* value);

} // namespace detail

} // namespace varrob

#endif // VARROB_SOLVE_HPP
