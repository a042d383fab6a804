#ifndef VARROB_UNCERTAINTY_HPP
#define VARROB_UNCERTAINTY_HPP

#include <string>

#include "varrob/common.hpp"
#include "varrob/instance.hpp"

namespace varrob {

enum class ShapeKind {
    ProportionalBox, // B = X_i [-c_hat_i, c_hat_i]
    ConstantBox,     // B = X_i [-1, 1]
    ArbitraryBox,    // B = X_i [-d_i, d_i]
    InfinityBall,    // unit ball of max_i |c_i|/d_i  (same set as ArbitraryBox)
    ManhattanBall,   // unit ball of sum_i |c_i|/d_i
    EuclideanBall,   // unit ball of sqrt(sum_i c_i^2/d_i)
    Ellipsoid        // unit ball of sqrt(c^t Q^{-1} c), Q positive definite
};

std::string shape_kind_name(ShapeKind k);
ShapeKind shape_kind_from_name(const std::string& name);

/// The scaling shape B of an uncertainty set {c_hat} + lambda * B.
/// Weight vectors d must be nonnegative (a zero component is the
/// degenerate limit that pins that coordinate); Q must be symmetric
/// positive definite, validated by a Cholesky factorization.
class Shape {
public:
    static Shape proportional_box();
    static Shape constant_box();
    static Shape arbitrary_box(Vec d);
    static Shape infinity_ball(Vec d);
    static Shape manhattan_ball(Vec d);
    static Shape euclidean_ball(Vec d);
    static Shape ellipsoid(Mat q);

    ShapeKind kind() const { return kind_; }
    const Vec& d() const { return d_; }
    const Mat& q() const { return q_; }

    /// Dimension constraint carried by the parameters: 0 when the shape is
    /// dimensionless (proportional/constant boxes).
    int dim() const;

private:
    ShapeKind kind_ = ShapeKind::ConstantBox;
    Vec d_;
    Mat q_;
};

/// max { c^t x : c in c_hat + lambda * B }, in closed form per shape.
double worst_case_value(const Shape& shape, double lambda, const Vec& c_hat,
                        const Solution& x);

/// The second criterion f2(x) = max { c^t x : c in B }. The proportional
/// box depends on c_hat; the other shapes ignore it.
double second_criterion(const Shape& shape, const Vec& c_hat, const Solution& x);

/// Builds the ellipsoid shape Q = L L^t from an n x k factor matrix. A
/// singular product (k < n or rank-deficient L) is regularized with
/// +1e-6 I; `*ridged` reports whether that happened.
Shape ellipsoid_from_factors(const Mat& factors, bool* ridged = nullptr);

/// Interval deviations [c_hat - d_minus, c_hat + d_plus] with per-
/// coordinate caps; the size of the set is sum(d_plus + d_minus).
struct GeneralInterval {
    Vec d_plus, d_minus;
    Vec cap_plus, cap_minus; // kInf allowed

    void validate() const;
    double size() const;
};

} // namespace varrob

#endif // VARROB_UNCERTAINTY_HPP
