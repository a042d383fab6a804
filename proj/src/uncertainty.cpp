#include "varrob/uncertainty.hpp"

namespace varrob {

std::string shape_kind_name(ShapeKind k) {
    switch (k) {
        case ShapeKind::ProportionalBox: return "proportional-box";
        case ShapeKind::ConstantBox: return "constant-box";
        case ShapeKind::ArbitraryBox: return "arbitrary-box";
        case ShapeKind::InfinityBall: return "infinity-ball";
        case ShapeKind::ManhattanBall: return "manhattan-ball";
        case ShapeKind::EuclideanBall: return "euclidean-ball";
        case ShapeKind::Ellipsoid: return "ellipsoid";
    }
    throw Error("shape_kind_name: bad kind");
}

ShapeKind shape_kind_from_name(const std::string& name) {
    if (name == "proportional-box" || name == "proportional") return ShapeKind::ProportionalBox;
    if (name == "constant-box" || name == "constant") return ShapeKind::ConstantBox;
    if (name == "arbitrary-box" || name == "arbitrary") return ShapeKind::ArbitraryBox;
    if (name == "infinity-ball" || name == "infinity") return ShapeKind::InfinityBall;
    if (name == "manhattan-ball" || name == "manhattan") return ShapeKind::ManhattanBall;
    if (name == "euclidean-ball" || name == "euclidean") return ShapeKind::EuclideanBall;
    if (name == "ellipsoid") return ShapeKind::Ellipsoid;
    throw Error("unknown shape variant: '" + name + "'");
}

namespace {

Vec checked_weights(Vec d) {
    if (d.empty()) throw Error("shape weight vector must be nonempty");
    bool any_pos = false;
    for (double v : d) {
        if (!std::isfinite(v) || v < 0.0)
            throw Error("shape weights must be finite and nonnegative");
        if (v > 0.0) any_pos = true;
    }
    if (!any_pos) throw Error("shape weights must not all be zero");
    return d;
}

} // namespace

Shape Shape::proportional_box() {
    Shape s;
    s.kind_ = ShapeKind::ProportionalBox;
    return s;
}

Shape Shape::constant_box() {
    Shape s;
    s.kind_ = ShapeKind::ConstantBox;
    return s;
}

Shape Shape::arbitrary_box(Vec d) {
    Shape s;
    s.kind_ = ShapeKind::ArbitraryBox;
    s.d_ = checked_weights(std::move(d));
    return s;
}

Shape Shape::infinity_ball(Vec d) {
    Shape s;
    s.kind_ = ShapeKind::InfinityBall;
    s.d_ = checked_weights(std::move(d));
    return s;
}

Shape Shape::manhattan_ball(Vec d) {
    Shape s;
    s.kind_ = ShapeKind::ManhattanBall;
    s.d_ = checked_weights(std::move(d));
    return s;
}

Shape Shape::euclidean_ball(Vec d) {
    Shape s;
    s.kind_ = ShapeKind::EuclideanBall;
    s.d_ = checked_weights(std::move(d));
    return s;
}

Shape Shape::ellipsoid(Mat q) {
    if (q.rows != q.cols || q.rows < 1) throw Error("ellipsoid matrix must be square");
    for (int i = 0; i < q.rows; ++i)
        for (int j = 0; j < q.cols; ++j) {
            if (!std::isfinite(q.at(i, j))) throw Error("ellipsoid matrix has non-finite entry");
            if (std::fabs(q.at(i, j) - q.at(j, i)) > 1e-9)
                throw Error("ellipsoid matrix must be symmetric");
        }
    if (!cholesky(q, nullptr))
        throw Error("ellipsoid matrix must be positive definite");
    Shape s;
    s.kind_ = ShapeKind::Ellipsoid;
    s.q_ = std::move(q);
    return s;
}

int Shape::dim() const {
    switch (kind_) {
        case ShapeKind::ProportionalBox:
        case ShapeKind::ConstantBox:
            return 0;
        case ShapeKind::Ellipsoid:
            return q_.rows;
        default:
            return static_cast<int>(d_.size());
    }
}

namespace {

void check_shape_dims(const Shape& shape, std::size_t n, const char* what) {
    int sd = shape.dim();
    if (sd != 0 && sd != static_cast<int>(n))
        throw Error(std::string(what) + ": shape dimension does not match solution");
}

} // namespace

double worst_case_value(const Shape& shape, double lambda, const Vec& c_hat,
                        const Solution& x) {
    if (c_hat.size() != x.x.size())
        throw Error("worst_case_value: c_hat length does not match solution");
    check_shape_dims(shape, x.x.size(), "worst_case_value");
    if (lambda < 0.0) throw Error("worst_case_value: lambda must be >= 0");

    double base = dot(c_hat, x.x);
    switch (shape.kind()) {
        case ShapeKind::ProportionalBox:
            return (1.0 + lambda) * base;
        case ShapeKind::ConstantBox: {
            double ones = 0.0;
            for (auto xi : x.x) ones += xi;
            return base + lambda * ones;
        }
        case ShapeKind::ArbitraryBox:
        case ShapeKind::InfinityBall:
            return base + lambda * dot(shape.d(), x.x);
        case ShapeKind::ManhattanBall: {
            double m = 0.0;
            for (std::size_t i = 0; i < x.x.size(); ++i)
                if (x.x[i]) m = std::max(m, shape.d()[i]);
            return base + lambda * m;
        }
        case ShapeKind::EuclideanBall:
            return base + lambda * std::sqrt(dot(shape.d(), x.x));
        case ShapeKind::Ellipsoid: {
            double quad = 0.0;
            const Mat& q = shape.q();
            for (int i = 0; i < q.rows; ++i) {
                if (!x.x[i]) continue;
                for (int j = 0; j < q.cols; ++j)
                    if (x.x[j]) quad += q.at(i, j);
            }
            return base + lambda * std::sqrt(std::max(0.0, quad));
        }
    }
    throw Error("worst_case_value: bad shape");
}

double second_criterion(const Shape& shape, const Vec& c_hat, const Solution& x) {
    if (shape.kind() == ShapeKind::ProportionalBox) {
        // B spans [-c_hat_i, c_hat_i], so the maximum of c^t x over B is
        // c_hat^t x itself (costs are nonnegative in frontier mode).
        return dot(c_hat, x.x);
    }
    Vec zeros(x.x.size(), 0.0);
    return worst_case_value(shape, 1.0, zeros, x);
}

Shape ellipsoid_from_factors(const Mat& factors, bool* ridged) {
    if (factors.rows < 1 || factors.cols < 1)
        throw Error("ellipsoid_from_factors: empty factor matrix");
    bool any = false;
    for (double v : factors.a) {
        if (!std::isfinite(v)) throw Error("ellipsoid_from_factors: non-finite entry");
        if (v != 0.0) any = true;
    }
    if (!any) throw Error("ellipsoid_from_factors: zero factor matrix");

    int n = factors.rows, k = factors.cols;
    Mat q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int t = 0; t < k; ++t) s += factors.at(i, t) * factors.at(j, t);
            q.at(i, j) = s;
        }
    bool needs_ridge = !cholesky(q, nullptr);
    if (needs_ridge)
        for (int i = 0; i < n; ++i) q.at(i, i) += 1e-6;
    if (ridged) *ridged = needs_ridge;
    return Shape::ellipsoid(std::move(q));
}

void GeneralInterval::validate() const {
    std::size_t n = d_plus.size();
    if (d_minus.size() != n || cap_plus.size() != n || cap_minus.size() != n)
        throw Error("general interval: vector lengths disagree");
    for (std::size_t i = 0; i < n; ++i) {
        if (d_plus[i] < 0.0 || d_minus[i] < 0.0)
            throw Error("general interval: deviations must be nonnegative");
        if (cap_plus[i] < 0.0 || cap_minus[i] < 0.0)
            throw Error("general interval: caps must be nonnegative");
        if (d_plus[i] > cap_plus[i] + kTol || d_minus[i] > cap_minus[i] + kTol)
            throw Error("general interval: deviation exceeds its cap");
    }
}

double GeneralInterval::size() const {
    double s = 0.0;
    for (std::size_t i = 0; i < d_plus.size(); ++i) s += d_plus[i] + d_minus[i];
    return s;
}

} // namespace varrob
