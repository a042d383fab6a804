#ifndef VARROB_LP_HPP
#define VARROB_LP_HPP

#include <string>
#include <vector>

#include "varrob/common.hpp"

namespace varrob {

/// Matrix-form linear program. Bounds may be infinite on either side;
/// row senses are 'L' (<=), 'E' (=), 'G' (>=). Variable and row names
/// must be unique (checked by validate()).
struct LinearProgram {
    enum class Sense { Min, Max };

    struct Var {
        std::string name;
        double lb = 0.0;
        double ub = kInf;
        double obj = 0.0;
    };

    struct Row {
        std::string name;
        std::vector<std::pair<int, double>> coeffs;
        char sense = 'L';
        double rhs = 0.0;
    };

    Sense sense = Sense::Min;
    std::vector<Var> vars;
    std::vector<Row> rows;

    int add_var(std::string name, double lb, double ub, double obj);
    void add_row(std::string name, std::vector<std::pair<int, double>> coeffs,
                 char sense, double rhs);
    void validate() const;
};

/// Linear program plus the set of variables restricted to {0,1}.
struct MilpModel {
    LinearProgram lp;
    std::vector<int> binaries;

    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

struct SimplexResult {
    LpStatus status = LpStatus::NumericalFailure;
    double objective = 0.0;
    Vec x;     // one value per variable
    Vec duals; // shadow prices per row (d objective / d rhs, original sense)
    int iterations = 0;
    std::string message;
};

struct SimplexOptions {
    int max_iters = 200000;
    double redcost_tol = 1e-9;
    double feas_tol = 1e-9;
};

/// Two-phase dense primal simplex with bounded variables and a Bland-rule
/// fallback on degeneracy. Optimal solutions carry duals; optimality is
/// re-verified from the original data (complementary slackness and a
/// strong-duality gap check), and a failed check reports
/// NumericalFailure rather than a wrong answer.
SimplexResult simplex_solve(const LinearProgram& lp, const SimplexOptions& opts = {});

enum class MilpStatus { Optimal, Infeasible, Unbounded, BudgetExhausted };

struct BnbResult {
    MilpStatus status = MilpStatus::Infeasible;
    double objective = 0.0; // incumbent objective (original sense)
    Vec x;                  // incumbent
    double bound = 0.0;     // best proven bound (equals objective when Optimal)
    long nodes = 0;
    bool has_incumbent = false;
};

struct BnbOptions {
    long max_nodes = 200000;
    double int_tol = 1e-6;
};

/// Best-bound branch and bound over the binary variables, branching on the
/// most fractional one. Budget exhaustion returns the incumbent and the
/// proven bound with an explicit status, never silently.
BnbResult branch_and_bound(const MilpModel& model, const BnbOptions& opts = {});

/// Writes the model in LP text format (sections Minimize/Maximize,
/// Subject To, Bounds, Binary, End), 12 significant digits, LF endings,
/// deterministic variable order.
void export_lp_file(const MilpModel& model, const std::string& path);
std::string lp_file_text(const MilpModel& model);

/// Parses the dialect written by export_lp_file.
MilpModel import_lp_file(const std::string& path);
MilpModel parse_lp_text(const std::string& text);

} // namespace varrob

#endif // VARROB_LP_HPP
