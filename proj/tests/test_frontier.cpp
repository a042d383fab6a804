#include <doctest.h>

#include <cmath>
#include <set>

#include "test_util.hpp"
#include "varrob/frontier.hpp"
#include "varrob/json_io.hpp"

using namespace varrob;
using namespace varrob::testutil;

namespace {

// Three disjoint 2-arc paths from 0 to 4; arc pairs (0,1), (2,3), (4,5).
Instance three_paths(Vec costs) {
    return Instance::shortest_path(
        5, {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4}}, 0, 4, std::move(costs));
}

// Independent oracle: a distinct objective pair is an extreme efficient
// point exactly when it is the unique minimizer of f1 + lambda f2 for some
// lambda >= 0; candidate lambdas come from all pairwise crossing slopes.
std::set<std::pair<double, double>> hull_vertex_oracle(
    const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> distinct;
    for (auto p : pts) {
        bool seen = false;
        for (auto q : distinct)
            if (std::fabs(p.first - q.first) <= 1e-9 &&
                std::fabs(p.second - q.second) <= 1e-9)
                seen = true;
        if (!seen) distinct.push_back(p);
    }
    std::vector<double> candidates = {0.0};
    std::vector<double> crossings;
    for (std::size_t i = 0; i < distinct.size(); ++i)
        for (std::size_t j = 0; j < distinct.size(); ++j) {
            double df2 = distinct[i].second - distinct[j].second;
            if (std::fabs(df2) < 1e-12) continue;
            double lam = (distinct[j].first - distinct[i].first) / df2;
            if (lam > 0) crossings.push_back(lam);
        }
    std::sort(crossings.begin(), crossings.end());
    double prev = 0.0;
    for (double c : crossings) {
        candidates.push_back(0.5 * (prev + c));
        prev = c;
    }
    candidates.push_back(prev + 1.0);

    std::set<std::pair<double, double>> vertices;
    for (double lam : candidates) {
        double best = kInf;
        int best_idx = -1, count = 0;
        for (std::size_t i = 0; i < distinct.size(); ++i) {
            double v = distinct[i].first + lam * distinct[i].second;
            if (v < best - 1e-9) {
                best = v;
                best_idx = static_cast<int>(i);
                count = 1;
            } else if (v <= best + 1e-9) {
                ++count;
            }
        }
        if (count == 1) vertices.insert(distinct[best_idx]);
    }
    return vertices;
}

std::set<std::pair<double, double>> frontier_pairs(const Frontier& f) {
    std::set<std::pair<double, double>> out;
    for (const auto& pt : f.points) out.insert({pt.f1, pt.f2});
    return out;
}

void check_against_oracle(const Instance& inst, const Frontier& frontier, const Vec& f1,
                          const std::function<double(const Solution&)>& f2) {
    auto all = enumerate_feasible(inst, 100000);
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : all) pts.push_back({dot(f1, s.x), f2(s)});
    auto expected = hull_vertex_oracle(pts);
    auto got = frontier_pairs(frontier);
    REQUIRE(got.size() == expected.size());
    for (const auto& p : expected) {
        bool found = false;
        for (const auto& q : got)
            if (std::fabs(p.first - q.first) <= 1e-7 &&
                std::fabs(p.second - q.second) <= 1e-7)
                found = true;
        CHECK(found);
    }
}

} // namespace

TEST_CASE("explore finds the hand frontier") {
    // Path objective pairs (0,10), (4,4), (10,0).
    Instance inst = three_paths({0, 0, 2, 2, 5, 5});
    Vec f2 = {5, 5, 2, 2, 0, 0};
    ExploreStats stats;
    Frontier f = explore(inst, inst.c_hat(), f2, &stats);
    REQUIRE(f.size() == 3);
    CHECK(f.points[0].f1 == doctest::Approx(0.0));
    CHECK(f.points[0].f2 == doctest::Approx(10.0));
    CHECK(f.points[1].f1 == doctest::Approx(4.0));
    CHECK(f.points[2].f1 == doctest::Approx(10.0));
    CHECK(f.points[0].lambda_hi == doctest::Approx(2.0 / 3.0));
    CHECK(f.points[1].lambda_lo == doctest::Approx(2.0 / 3.0));
    CHECK(f.points[1].lambda_hi == doctest::Approx(1.5));
    CHECK(f.points[2].lambda_hi == kInf);
    CHECK(stats.weighted_solves <= 2 * 3 + 1);
}

TEST_CASE("explore drops points above the hull") {
    // (0,10), (5,6), (10,0): the middle point lies above the segment.
    Instance inst = three_paths({0, 0, 2.5, 2.5, 5, 5});
    Vec f2 = {5, 5, 3, 3, 0, 0};
    Frontier f = explore(inst, inst.c_hat(), f2);
    REQUIRE(f.size() == 2);
    CHECK(f.points[0].f2 == doctest::Approx(10.0));
    CHECK(f.points[1].f1 == doctest::Approx(10.0));
}

TEST_CASE("explore on a single solution") {
    Instance inst = Instance::shortest_path(2, {{0, 1}}, 0, 1, {3});
    Frontier f = explore(inst, inst.c_hat(), {1.0});
    REQUIRE(f.size() == 1);
    CHECK(f.points[0].lambda_lo == doctest::Approx(0.0));
    CHECK(f.points[0].lambda_hi == kInf);
}

TEST_CASE("variable-sized dispatch: proportional growth is a singleton") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = random_assignment(3, 20, seed);
        Frontier f = solve_variable_sized(inst, Shape::proportional_box());
        REQUIRE(f.size() == 1);
        Solution nominal = solve_nominal(inst, inst.c_hat());
        CHECK(f.points[0].solution.x == nominal.x);
        CHECK(f.points[0].lambda_hi == kInf);
    }
}

TEST_CASE("variable-sized dispatch: zero vector dominates constant growth") {
    Instance inst = Instance::unconstrained({3, 1, 4, 1});
    Frontier f = solve_variable_sized(inst, Shape::constant_box());
    REQUIRE(f.size() == 1);
    CHECK(f.points[0].solution.x == BinVec{0, 0, 0, 0});
}

TEST_CASE("variable-sized dispatch: deviations proportional to costs") {
    Instance inst = paper_assignment();
    Frontier f = solve_variable_sized(inst, Shape::arbitrary_box(inst.c_hat()));
    CHECK(f.size() == 1);
}

TEST_CASE("label_hops examples") {
    {
        // Direct arc (cost 10) versus a 2-hop path of cost 6.
        Instance inst =
            Instance::shortest_path(3, {{0, 2}, {0, 1}, {1, 2}}, 0, 2, {10, 3, 3});
        Frontier f = label_hops(inst);
        REQUIRE(f.size() == 2);
        CHECK(f.points[0].f1 == doctest::Approx(6.0));
        CHECK(f.points[0].f2 == doctest::Approx(2.0));
        CHECK(f.points[1].f1 == doctest::Approx(10.0));
        CHECK(f.points[1].f2 == doctest::Approx(1.0));
    }
    {
        // Parallel arcs: the dominated label is pruned.
        Instance inst = Instance::shortest_path(2, {{0, 1}, {0, 1}}, 0, 1, {5, 7});
        Frontier f = label_hops(inst);
        REQUIRE(f.size() == 1);
        CHECK(f.points[0].f1 == doctest::Approx(5.0));
        CHECK(f.points[0].f2 == doctest::Approx(1.0));
    }
    {
        Instance inst = Instance::shortest_path(2, {{0, 1}}, 0, 1, {4});
        Frontier f = label_hops(inst);
        REQUIRE(f.size() == 1);
        CHECK(f.points[0].f2 == doctest::Approx(1.0));
    }
}

TEST_CASE("label_hops equals explore with unit second costs") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 15 && seed < 300; ++seed) {
        auto maybe = gen_random_digraph(7, seed, 1, 12);
        if (!maybe) continue;
        ++done;
        Frontier a = label_hops(*maybe);
        Frontier b = explore(*maybe, maybe->c_hat(), Vec(maybe->n(), 1.0));
        CHECK(frontier_pairs(a) == frontier_pairs(b));
    }
    CHECK(done == 15);
}

TEST_CASE("label_maxedge examples") {
    {
        Instance inst = diamond({5, 5, 3, 3});
        // Path 1 (arcs 0,1): cost 10, max d = 1; path 2: cost 6, max d = 5.
        Frontier f = label_maxedge(inst, {1, 1, 5, 5});
        REQUIRE(f.size() == 2);
        CHECK(f.points[0].f1 == doctest::Approx(6.0));
        CHECK(f.points[0].f2 == doctest::Approx(5.0));
        CHECK(f.points[1].f1 == doctest::Approx(10.0));
        CHECK(f.points[1].f2 == doctest::Approx(1.0));
    }
    {
        Instance inst = diamond({5, 5, 3, 3});
        Frontier f = label_maxedge(inst, {1, 1, 1, 1});
        REQUIRE(f.size() == 1);
        CHECK(f.points[0].f1 == doctest::Approx(6.0));
        CHECK(f.points[0].f2 == doctest::Approx(1.0));
    }
    {
        Instance inst = Instance::shortest_path(2, {{0, 1}}, 0, 1, {4});
        Frontier f = label_maxedge(inst, {2.5});
        REQUIRE(f.size() == 1);
        CHECK(f.points[0].f2 == doctest::Approx(2.5));
    }
}

TEST_CASE("concave filter examples") {
    // Linear frontier (0,9), (4,4), (10,0); under sqrt the middle point
    // falls inside the hull: segment value at f1=4 is 1.8 < 2.
    Instance inst = three_paths({0, 0, 2, 2, 5, 5});
    Vec f2 = {4.5, 4.5, 2, 2, 0, 0};
    Frontier lin = explore(inst, inst.c_hat(), f2);
    REQUIRE(lin.size() == 3);
    Frontier filtered = concave_filter(lin, [](double v) { return std::sqrt(v); });
    REQUIRE(filtered.size() == 2);
    CHECK(filtered.points[0].f2 == doctest::Approx(3.0));
    CHECK(filtered.points[1].f2 == doctest::Approx(0.0));

    // Two points always stay.
    Instance inst2 = three_paths({0, 0, 2.5, 2.5, 5, 5});
    Frontier two = explore(inst2, inst2.c_hat(), {5, 5, 3, 3, 0, 0});
    REQUIRE(two.size() == 2);
    CHECK(concave_filter(two, [](double v) { return std::sqrt(v); }).size() == 2);

    // Identity keeps everything.
    CHECK(concave_filter(lin, [](double v) { return v; }).size() == 3);

    // Non-monotone transforms are rejected.
    CHECK_THROWS_AS(concave_filter(lin, [](double v) { return -v; }), Error);
}

TEST_CASE("concave filter output is a subset of its input") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 10 && seed < 200; ++seed) {
        auto maybe = gen_random_digraph(7, seed, 1, 10);
        if (!maybe) continue;
        ++done;
        Vec d = gen_weights(maybe->n(), 1, 9, seed + 31);
        Frontier lin = explore(*maybe, maybe->c_hat(), d);
        Frontier fil = concave_filter(lin, [](double v) { return std::sqrt(v); });
        auto in = frontier_pairs(lin);
        for (const auto& pt : fil.points) {
            bool found = false;
            for (const auto& q : in)
                if (std::fabs(q.first - pt.f1) <= 1e-9) found = true;
            CHECK(found);
        }
        CHECK(fil.size() <= lin.size());
    }
}

TEST_CASE("explore matches the enumeration oracle across shapes") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 20 && seed < 400; ++seed) {
        auto maybe = gen_random_digraph(6, seed, 1, 10);
        if (!maybe) continue;
        ++done;
        const Instance& inst = *maybe;
        Vec ones(inst.n(), 1.0);
        Vec d = gen_weights(inst.n(), 1, 8, seed + 7);

        check_against_oracle(inst, explore(inst, inst.c_hat(), ones), inst.c_hat(),
                             [&](const Solution& s) { return dot(ones, s.x); });
        check_against_oracle(inst, explore(inst, inst.c_hat(), d), inst.c_hat(),
                             [&](const Solution& s) { return dot(d, s.x); });
        check_against_oracle(
            inst, label_maxedge(inst, d), inst.c_hat(), [&](const Solution& s) {
                double m = 0;
                for (int i = 0; i < inst.n(); ++i)
                    if (s.x[i]) m = std::max(m, d[i]);
                return m;
            });
    }
    CHECK(done == 20);
}

TEST_CASE("max-criterion oracle matches labeling on assignments") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = random_assignment(3, 10, seed);
        Vec d = gen_weights(inst.n(), 1, 6, seed + 5);
        Frontier f = solve_variable_sized(inst, Shape::manhattan_ball(d));
        check_against_oracle(inst, f, inst.c_hat(), [&](const Solution& s) {
            double m = 0;
            for (int i = 0; i < inst.n(); ++i)
                if (s.x[i]) m = std::max(m, d[i]);
            return m;
        });
    }
}

TEST_CASE("frontier points minimize their own lambda range") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 10 && seed < 200; ++seed) {
        auto maybe = gen_random_digraph(6, seed, 1, 10);
        if (!maybe) continue;
        ++done;
        const Instance& inst = *maybe;
        Vec d = gen_weights(inst.n(), 1, 8, seed + 3);
        Frontier f = explore(inst, inst.c_hat(), d);
        auto all = enumerate_feasible(inst, 100000);
        for (const auto& pt : f.points) {
            double hi = pt.lambda_hi == kInf ? pt.lambda_lo + 10.0 : pt.lambda_hi;
            for (int k = 0; k < 20; ++k) {
                double lambda = pt.lambda_lo + (hi - pt.lambda_lo) * k / 19.0;
                double own = pt.f1 + lambda * pt.f2;
                for (const auto& s : all)
                    CHECK(own <= dot(inst.c_hat(), s.x) + lambda * dot(d, s.x) + 1e-9);
            }
        }
    }
    CHECK(done == 10);
}

TEST_CASE("optimal value is concave and solutions never return") {
    int done = 0;
    for (std::uint64_t seed = 0; done < 10 && seed < 200; ++seed) {
        auto maybe = gen_random_digraph(6, seed, 1, 10);
        if (!maybe) continue;
        ++done;
        Vec d = gen_weights(maybe->n(), 1, 8, seed + 13);
        Frontier f = explore(*maybe, maybe->c_hat(), d);
        // Contiguous intervals, each solution appearing exactly once.
        std::set<BinVec> seen;
        for (const auto& pt : f.points) CHECK(seen.insert(pt.solution.x).second);
        // Piecewise-linear optimal value: increasing, concave via slopes
        // (slopes along lambda are the f2 values, which decrease).
        for (std::size_t i = 0; i + 1 < f.points.size(); ++i)
            CHECK(f.points[i].f2 > f.points[i + 1].f2);
    }
    CHECK(done == 10);
}

TEST_CASE("ellipsoidal frontier by enumeration") {
    Instance inst = two_by_two();
    Mat q = Mat::identity(4);
    q.at(0, 1) = q.at(1, 0) = 0.3;
    Frontier f = solve_variable_sized(inst, Shape::ellipsoid(q));
    CHECK(f.size() >= 1);
    // Matches the generic oracle on the enumerated pair set.
    Shape shape = Shape::ellipsoid(q);
    check_against_oracle(inst, f, inst.c_hat(), [&](const Solution& s) {
        return second_criterion(shape, inst.c_hat(), s);
    });

    // Enumeration limit produces the documented error.
    Instance big = random_assignment(8, 5, 1);
    CHECK_THROWS_WITH_AS(solve_variable_sized(big, Shape::ellipsoid(Mat::identity(64)), 100),
                         doctest::Contains("requires enumeration"), Error);
}

TEST_CASE("frontier bound checks") {
    Frontier f;
    for (int i = 0; i < 3; ++i) {
        FrontierPoint pt;
        pt.f1 = i;
        pt.f2 = 2 - i;
        f.points.push_back(pt);
    }
    FrontierMeta sp;
    sp.graph_class = "series-parallel";
    sp.num_arcs = 7;
    sp.num_nodes = 5;
    BoundCheck c1 = check_frontier_bounds(f, sp);
    CHECK(c1.bound == doctest::Approx(4.0));
    CHECK(c1.pass);

    FrontierMeta lay;
    lay.graph_class = "layered";
    lay.layers = 3;
    lay.width = 2;
    BoundCheck c2 = check_frontier_bounds(f, lay);
    CHECK(c2.bound == doctest::Approx(16.0));
    CHECK(c2.pass);

    FrontierMeta cg;
    cg.graph_class = "constant-growth";
    cg.n = 2;
    BoundCheck c3 = check_frontier_bounds(f, cg);
    CHECK(!c3.pass);

    FrontierMeta bad;
    bad.graph_class = "mystery";
    CHECK_THROWS_AS(check_frontier_bounds(f, bad), Error);
}

TEST_CASE("robustness chart") {
    {
        Instance inst = Instance::shortest_path(2, {{0, 1}}, 0, 1, {3});
        Frontier f = explore(inst, inst.c_hat(), {1.0});
        auto rows = robustness_chart(f, inst.c_hat());
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].lambda_lo == doctest::Approx(0.0));
        CHECK(rows[0].lambda_hi == kInf);
        CHECK(rows[0].solution_id == "s0");
    }
    {
        // Paths (0,10) and (5,0): crossing at lambda = 0.5.
        Instance inst = diamond({0, 0, 2.5, 2.5});
        Frontier f = explore(inst, inst.c_hat(), {5, 5, 0, 0});
        auto rows = robustness_chart(f, inst.c_hat());
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].lambda_hi == doctest::Approx(0.5));
        CHECK(rows[1].lambda_lo == doctest::Approx(0.5));
    }
    {
        Instance inst = three_paths({0, 0, 2, 2, 5, 5});
        Frontier f = explore(inst, inst.c_hat(), {5, 5, 2, 2, 0, 0});
        auto rows = robustness_chart(f, inst.c_hat());
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].lambda_hi == doctest::Approx(rows[1].lambda_lo));
        CHECK(rows[1].lambda_hi == doctest::Approx(rows[2].lambda_lo));
        std::string csv = chart_csv(rows);
        CHECK(csv.find("lambda_lo,lambda_hi,nominal_cost,f2,solution_id") == 0);
        CHECK(csv.find("inf") != std::string::npos);
        std::string sidecar = frontier_solutions_json(f);
        CHECK(sidecar.find("\"s0\"") != std::string::npos);
        CHECK(sidecar.find("\"s2\"") != std::string::npos);
    }
    Frontier empty;
    CHECK_THROWS_AS(robustness_chart(empty, {1.0}), Error);
}
