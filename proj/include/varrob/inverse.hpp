#ifndef VARROB_INVERSE_HPP
#define VARROB_INVERSE_HPP

#include <optional>
#include <vector>

#include "varrob/lp.hpp"
#include "varrob/regret.hpp"
#include "varrob/solve.hpp"
#include "varrob/uncertainty.hpp"

namespace varrob {

enum class InverseMode { BestRegular, WorstRegular, BestGeneral, WorstGeneral };

/// Problem data for the four inverse formulations. Regular modes scale
/// proportional intervals by lambda in [0,1]; general modes optimize
/// per-coordinate deviations under caps. Best modes maximize the
/// uncertainty preserving x_hat's regret-optimality, worst modes minimize
/// the uncertainty breaking it by eps.
struct InverseSpec {
    const Instance* instance = nullptr;
    Solution x_hat;
    InverseMode mode = InverseMode::BestRegular;
    Vec cap_plus, cap_minus; // general modes; kInf allowed only outside MILPs
    double eps = 1.0;        // worst modes
    bool symmetric = false;  // ties d+ = d- coordinatewise
    std::vector<Solution> pool; // competitors for the best-mode masters

    void check(InverseMode expected) const;
};

/// A built model plus the variable maps needed to read solutions back.
struct InverseModel {
    MilpModel model;
    int lambda_var = -1;
    std::vector<int> d_plus_vars, d_minus_vars;
    std::vector<std::vector<int>> pool_x_vars, pool_y_vars, pool_z_vars;
    std::vector<int> xprime_vars, xtilde_vars;
    std::vector<int> y_vars, z_vars, beta_vars, gamma_vars;
};

/// Duality-based masters (require an integral LP relaxation). The caps of
/// the general modes double as the McCormick big-Ms, so they must be
/// finite there.
InverseModel build_bestcase_regular(const InverseSpec& spec);
InverseModel build_worstcase_regular(const InverseSpec& spec);
InverseModel build_bestcase_general(const InverseSpec& spec);
InverseModel build_worstcase_general(const InverseSpec& spec);

struct RowGenResult {
    double objective = 0.0;
    double lambda = 0.0; // regular modes
    Vec d_plus, d_minus; // general modes
    bool feasible = true;          // worst modes can be infeasible
    bool budget_exhausted = false; // objective then holds the best bound
    int iterations = 0;
    std::vector<BinVec> pool_trace; // competitors added, in order
};

/// Master/subproblem loop. Best modes grow the competitor pool by solving
/// a min-max regret subproblem (enumeration-backed); a new competitor is
/// added when it violates the master constraint by more than 1e-6.
/// Instances without an integral relaxation switch to the primal-pool
/// variant on both sides. Worst modes solve the compact model directly,
/// or generate scenario rows lazily when duality is unavailable.
RowGenResult row_generation_solve(const InverseSpec& spec, int budget = 64,
                                  std::size_t enum_limit = 200000);

struct UnconstrainedBestCase {
    Vec d_plus, d_minus;
    double size = 0.0;
};

/// Closed form for the unconstrained problem: coordinatewise caps-clipped
/// deviations keeping the packing decision of every element unchanged.
UnconstrainedBestCase unconstrained_bestcase(const Vec& c_hat, const Vec& cap_plus,
                                             const Vec& cap_minus);

struct WitnessResult {
    double objective = 0.0;
    Vec d_plus, d_minus;
    bool feasible = true;
};

/// Brute-force validator. Best-general: maximize over one regret-witness
/// choice per competitor, solving one LP per witness assignment.
/// Worst-general: minimize over (competitor, witness) pairs. Exact because
/// regret is the maximum of the linear forms L(x, y, d). Refuses when the
/// witness-combination count exceeds `max_combos`.
WitnessResult witness_oracle(const InverseSpec& spec, std::size_t max_combos = 1000000);

struct GeneralInverseResult {
    double objective = 0.0;
    Vec d_plus, d_minus;
    bool feasible = true;
    BinVec beating; // worst mode: the alternative that overtakes x_hat
};

/// Exact worst-case general solver via decomposition over (alternative,
/// witness) pairs with lazy scenario rows and lower-bound pruning; much
/// faster than the compact MILP on instances with many feasible
/// solutions, and cross-validated against it on small ones.
GeneralInverseResult solve_worstcase_general(const Instance& inst, const Solution& x_hat,
                                             const Vec& cap_plus, const Vec& cap_minus,
                                             double eps, bool symmetric,
                                             std::size_t enum_limit = 200000);

/// Best-case general solver: the row-generation master loop.
GeneralInverseResult solve_bestcase_general(const Instance& inst, const Solution& x_hat,
                                            const Vec& cap_plus, const Vec& cap_minus,
                                            bool symmetric,
                                            std::size_t enum_limit = 200000);

/// L(x, y, d) = c(x,d)^t x - c(x,d)^t y, the regret of x when y is the
/// scenario minimizer; linear in the deviations.
double l_value(const Instance& inst, const BinVec& x, const BinVec& y,
               const Vec& d_plus, const Vec& d_minus);

} // namespace varrob

#endif // VARROB_INVERSE_HPP
