#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "varrob/uncertainty.hpp"

using namespace varrob;
using namespace varrob::testutil;

namespace {

Solution make_sol(const BinVec& x) {
    Solution s;
    s.x = x;
    return s;
}

// Oracle: exact maximum of c^t x over a box c_hat +- w (vertex enumeration).
double box_max_oracle(const Vec& c_hat, const Vec& w, const BinVec& x) {
    std::size_t n = c_hat.size();
    double best = -kInf;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double c = c_hat[i] + (((m >> i) & 1u) ? w[i] : -w[i]);
            if (x[i]) v += c;
        }
        best = std::max(best, v);
    }
    return best;
}

// Oracle: maximum over the scaled cross-polytope (vertices +-lambda d_i e_i).
double manhattan_max_oracle(const Vec& c_hat, const Vec& d, double lambda,
                            const BinVec& x) {
    double base = dot(c_hat, x);
    double best = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!x[i]) continue;
        best = std::max(best, lambda * d[i]);
    }
    return base + best;
}

// Oracle: random boundary sampling plus the analytic stationary point for
// the ellipsoidal ball {c : c^t Q^{-1} c <= 1} scaled by lambda.
double ellipsoid_max_oracle(const Vec& c_hat, const Mat& q, double lambda,
                            const BinVec& x, Rng& rng) {
    Mat lower;
    REQUIRE(cholesky(q, &lower));
    int n = q.rows;
    double base = dot(c_hat, x);
    double best = 0.0;
    for (int trial = 0; trial < 100000 / std::max(1, n); ++trial) {
        Vec u(n);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            double a = rng.uniform_real(-1.0, 1.0);
            u[i] = a;
            norm += a * a;
        }
        if (norm < 1e-12) continue;
        norm = std::sqrt(norm);
        double v = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!x[i]) continue;
            double ci = 0.0;
            for (int k = 0; k <= i; ++k) ci += lower.at(i, k) * u[k] / norm;
            v += ci;
        }
        best = std::max(best, lambda * v);
    }
    double quad = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (x[i] && x[j]) quad += q.at(i, j);
    best = std::max(best, lambda * std::sqrt(std::max(0.0, quad)));
    return base + best;
}

} // namespace

TEST_CASE("worst case closed forms match the hand examples") {
    Vec c1 = {2, 3, 4};
    BinVec x1 = {1, 0, 1};
    double oracle1 = box_max_oracle(c1, {0.5, 0.5, 0.5}, x1);
    CHECK(oracle1 == doctest::Approx(7.0));
    CHECK(worst_case_value(Shape::constant_box(), 0.5, c1, make_sol(x1)) ==
          doctest::Approx(oracle1));

    Vec c2 = {1, 1, 1};
    BinVec x2 = {1, 1, 0};
    double oracle2 = manhattan_max_oracle(c2, {2, 5, 9}, 2.0, x2);
    CHECK(oracle2 == doctest::Approx(12.0));
    CHECK(worst_case_value(Shape::manhattan_ball({2, 5, 9}), 2.0, c2, make_sol(x2)) ==
          doctest::Approx(oracle2));

    // Unit sphere: Cauchy-Schwarz equality case.
    Vec c3 = {0, 0, 0};
    CHECK(worst_case_value(Shape::ellipsoid(Mat::identity(3)), 1.0, c3,
                           make_sol({1, 1, 0})) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("second criterion examples") {
    CHECK(second_criterion(Shape::constant_box(), {0, 0, 0}, make_sol({1, 1, 0})) ==
          doctest::Approx(2.0));
    CHECK(second_criterion(Shape::arbitrary_box({3, 4, 5}), {0, 0, 0},
                           make_sol({0, 1, 1})) == doctest::Approx(9.0));
    // Lagrange stationarity for the weighted Euclidean ball: the maximum of
    // c^t x over sum c_i^2/d_i <= 1 is sqrt(sum d_i x_i).
    double analytic = std::sqrt(4.0 + 9.0);
    CHECK(second_criterion(Shape::euclidean_ball({4, 9, 0}), {0, 0, 0},
                           make_sol({1, 1, 0})) == doctest::Approx(analytic));
}

TEST_CASE("ellipsoid from factors") {
    bool ridged = false;
    Shape s1 = ellipsoid_from_factors(Mat::identity(2), &ridged);
    CHECK(!ridged);
    CHECK(s1.q().at(0, 0) == doctest::Approx(1.0));
    CHECK(s1.q().at(0, 1) == doctest::Approx(0.0));

    Mat l2(2, 2);
    l2.at(0, 0) = 2.0;
    l2.at(1, 1) = 3.0;
    Shape s2 = ellipsoid_from_factors(l2, &ridged);
    CHECK(!ridged);
    CHECK(s2.q().at(0, 0) == doctest::Approx(4.0));
    CHECK(s2.q().at(1, 1) == doctest::Approx(9.0));

    Mat l3(2, 1);
    l3.at(0, 0) = 1.0;
    l3.at(1, 0) = 1.0;
    Shape s3 = ellipsoid_from_factors(l3, &ridged);
    CHECK(ridged);
    CHECK(s3.q().at(0, 0) == doctest::Approx(1.0 + 1e-6));
    CHECK(s3.q().at(0, 1) == doctest::Approx(1.0));

    Mat zero(2, 2);
    CHECK_THROWS_AS(ellipsoid_from_factors(zero), Error);
    Mat bad(2, 1);
    bad.at(0, 0) = std::nan("");
    CHECK_THROWS_AS(ellipsoid_from_factors(bad), Error);
}

TEST_CASE("zero budget recovers the nominal value and growth is monotone") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + rng.uniform_int(0, 4);
        Vec c_hat(n), d(n);
        BinVec x(n, 0);
        for (int i = 0; i < n; ++i) {
            c_hat[i] = rng.uniform_int(0, 9);
            d[i] = rng.uniform_int(1, 5);
            x[i] = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
        }
        std::vector<Shape> shapes;
        shapes.push_back(Shape::proportional_box());
        shapes.push_back(Shape::constant_box());
        shapes.push_back(Shape::arbitrary_box(d));
        shapes.push_back(Shape::infinity_ball(d));
        shapes.push_back(Shape::manhattan_ball(d));
        shapes.push_back(Shape::euclidean_ball(d));
        shapes.push_back(Shape::ellipsoid(Mat::identity(n)));
        for (const auto& shape : shapes) {
            Solution sol = make_sol(x);
            CHECK(worst_case_value(shape, 0.0, c_hat, sol) ==
                  doctest::Approx(dot(c_hat, x)));
            double prev = -kInf;
            for (double lambda : {0.0, 0.25, 0.5, 1.0, 2.0}) {
                double v = worst_case_value(shape, lambda, c_hat, sol);
                CHECK(v >= prev - 1e-9);
                prev = v;
            }
        }
    }
}

TEST_CASE("closed forms match brute maximization on random data") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + rng.uniform_int(0, 4);
        Vec c_hat(n), d(n);
        BinVec x(n, 0);
        for (int i = 0; i < n; ++i) {
            c_hat[i] = rng.uniform_int(0, 9);
            d[i] = rng.uniform_int(1, 6);
            x[i] = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
        }
        double lambda = rng.uniform_int(1, 4) * 0.5;
        Solution sol = make_sol(x);

        Vec w_const(n, lambda), w_arb(n), w_prop(n);
        for (int i = 0; i < n; ++i) {
            w_arb[i] = lambda * d[i];
            w_prop[i] = lambda * c_hat[i];
        }
        CHECK(worst_case_value(Shape::constant_box(), lambda, c_hat, sol) ==
              doctest::Approx(box_max_oracle(c_hat, w_const, x)));
        CHECK(worst_case_value(Shape::arbitrary_box(d), lambda, c_hat, sol) ==
              doctest::Approx(box_max_oracle(c_hat, w_arb, x)));
        CHECK(worst_case_value(Shape::proportional_box(), lambda, c_hat, sol) ==
              doctest::Approx(box_max_oracle(c_hat, w_prop, x)));
        CHECK(worst_case_value(Shape::manhattan_ball(d), lambda, c_hat, sol) ==
              doctest::Approx(manhattan_max_oracle(c_hat, d, lambda, x)));

        // The weighted Euclidean ball is the diagonal ellipsoid Q = diag(d).
        Mat q(n, n);
        for (int i = 0; i < n; ++i) q.at(i, i) = d[i];
        double closed = worst_case_value(Shape::euclidean_ball(d), lambda, c_hat, sol);
        CHECK(closed ==
              doctest::Approx(worst_case_value(Shape::ellipsoid(q), lambda, c_hat, sol)));
        double sampled = ellipsoid_max_oracle(c_hat, q, lambda, x, rng);
        CHECK(sampled <= closed + 1e-6);
        CHECK(closed <= sampled + 0.05 * (1.0 + std::fabs(closed)));
    }
}

TEST_CASE("infinity ball and arbitrary box agree everywhere") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + rng.uniform_int(0, 5);
        Vec c_hat(n), d(n);
        BinVec x(n, 0);
        for (int i = 0; i < n; ++i) {
            c_hat[i] = rng.uniform_real(0.0, 10.0);
            d[i] = rng.uniform_real(0.1, 5.0);
            x[i] = static_cast<std::uint8_t>(rng.uniform_int(0, 1));
        }
        double lambda = rng.uniform_real(0.0, 3.0);
        Solution sol = make_sol(x);
        CHECK(worst_case_value(Shape::infinity_ball(d), lambda, c_hat, sol) ==
              doctest::Approx(
                  worst_case_value(Shape::arbitrary_box(d), lambda, c_hat, sol)));
    }
}

TEST_CASE("shape validation") {
    CHECK_THROWS_AS(Shape::arbitrary_box({1.0, -1.0}), Error);
    CHECK_THROWS_AS(Shape::manhattan_ball({0.0, 0.0}), Error);
    Mat asym(2, 2);
    asym.at(0, 0) = 1.0;
    asym.at(1, 1) = 1.0;
    asym.at(0, 1) = 0.5;
    CHECK_THROWS_AS(Shape::ellipsoid(asym), Error);
    Mat indef(2, 2);
    indef.at(0, 0) = 1.0;
    indef.at(1, 1) = -1.0;
    CHECK_THROWS_AS(Shape::ellipsoid(indef), Error);
    CHECK_THROWS_AS(worst_case_value(Shape::arbitrary_box({1, 2}), 1.0, {1, 2, 3},
                                     make_sol({1, 0, 1})),
                    Error);
}

TEST_CASE("general interval validation and size") {
    GeneralInterval gi;
    gi.d_plus = {1, 2};
    gi.d_minus = {0, 3};
    gi.cap_plus = {5, 5};
    gi.cap_minus = {5, 5};
    gi.validate();
    CHECK(gi.size() == doctest::Approx(6.0));
    gi.d_plus[0] = 6.0;
    CHECK_THROWS_AS(gi.validate(), Error);
}
