#ifndef VARROB_REGRET_HPP
#define VARROB_REGRET_HPP

#include <optional>
#include <string>
#include <vector>

#include "varrob/solve.hpp"
#include "varrob/uncertainty.hpp"

namespace varrob {

/// Convex piecewise-linear function on [0,1], built as the upper envelope
/// of a set of lines. Pieces are contiguous and continuous at the
/// breakpoints.
class PwlFunction {
public:
    struct Piece {
        double lo = 0.0, hi = 1.0;
        double intercept = 0.0, slope = 0.0;
    };

    /// lines are (intercept, slope) pairs. Coincident lines are merged at
    /// 1e-12 tolerance.
    static PwlFunction upper_envelope(std::vector<std::pair<double, double>> lines);

    double value(double lambda) const;
    const std::vector<Piece>& pieces() const { return pieces_; }
    /// All piece boundaries including 0 and 1.
    std::vector<double> breakpoints() const;

private:
    std::vector<Piece> pieces_;
};

/// Worst-case scenario for x under the proportional interval set of size
/// lambda: c_i = c_hat_i (1 - lambda + 2 lambda x_i).
Vec scenario_regular(const Instance& inst, const BinVec& x, double lambda);

/// Worst-case scenario under explicit deviations: c_i = c_hat_i + d+_i if
/// x_i = 1 else c_hat_i - d-_i.
Vec scenario_general(const Instance& inst, const BinVec& x, const Vec& d_plus,
                     const Vec& d_minus);

/// reg(x, lambda) = (1+lambda) c_hat^t x - opt(scenario); always >= 0.
double regret_regular(const Instance& inst, const Solution& x, double lambda);

/// reg(x, d+, d-) = scenario^t x - opt(scenario).
double regret_general(const Instance& inst, const Solution& x, const GeneralInterval& gi);

/// The full regret curve of x on [0,1] as the upper envelope over the
/// enumerated feasible set.
PwlFunction regret_pwl(const Instance& inst, const Solution& x,
                       std::size_t enum_limit = 100000);

struct BestCaseResult {
    /// sup { lambda : x_hat minimizes regret at lambda }; empty when x_hat
    /// is never regret-optimal on [0,1].
    std::optional<double> lambda_star;
    /// The full feasible set as closed intervals (may be disconnected; an
    /// isolated point appears as a degenerate interval).
    std::vector<std::pair<double, double>> intervals;
};

/// Exact breakpoint scan over the regret curves of every feasible
/// solution.
BestCaseResult best_case_lambda(const Instance& inst, const Solution& x_hat,
                                std::size_t enum_limit = 100000);

/// Smallest lambda in [0,1] at which some alternative beats x_hat's regret
/// by at least eps; empty when none exists.
std::optional<double> worst_case_lambda(const Instance& inst, const Solution& x_hat,
                                        double eps, std::size_t enum_limit = 100000);

/// CSV rows `lambda,regret,solution_id` sampled at the curve breakpoints.
std::string regret_curve_csv(const PwlFunction& curve, const std::string& solution_id);

} // namespace varrob

#endif // VARROB_REGRET_HPP
