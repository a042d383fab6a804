#include <doctest.h>

#include "test_util.hpp"
#include "varrob/solve.hpp"

using namespace varrob;
using namespace varrob::testutil;

TEST_CASE("nominal assignment matches the hand instance") {
    Instance inst = paper_assignment();
    Solution sol = solve_nominal(inst, inst.c_hat());
    CHECK(sol.c_hat_cost == doctest::Approx(12.0));
    // {c,d,h} is the lexicographically smallest optimal matching.
    CHECK(sol.x == cdh());

    // The preferred-solution override pins the tie to {a,f,h}.
    Solution pref = inst.make_solution(afh());
    Solution sol2 = solve_nominal(inst, inst.c_hat(), &pref);
    CHECK(sol2.x == afh());
    CHECK(sol2.c_hat_cost == doctest::Approx(12.0));

    // A non-optimal preferred solution is ignored.
    Solution bad = inst.make_solution({0, 1, 0, 1, 0, 0, 0, 0, 1}); // b,d,i = 1+7+8
    Solution sol3 = solve_nominal(inst, inst.c_hat(), &bad);
    CHECK(sol3.x == cdh());
}

TEST_CASE("nominal unconstrained packs nonpositive costs") {
    Instance inst = Instance::unconstrained({-3, 5, 0});
    Solution sol = solve_nominal(inst, inst.c_hat());
    CHECK(sol.x == BinVec{1, 0, 1});
    CHECK(sol.c_hat_cost == doctest::Approx(-3.0));
}

TEST_CASE("nominal single edge") {
    Instance inst = Instance::shortest_path(2, {{0, 1}}, 0, 1, {7});
    Solution sol = solve_nominal(inst, inst.c_hat());
    CHECK(sol.c_hat_cost == doctest::Approx(7.0));
    CHECK(sol.x == BinVec{1});
}

TEST_CASE("nominal errors") {
    Instance inst = paper_assignment();
    CHECK_THROWS_AS(solve_nominal(inst, {1, 2, 3}), Error);
    Vec neg(9, 1.0);
    neg[4] = -2.0;
    CHECK_THROWS_AS(solve_nominal(inst, neg), Error);
    CHECK_THROWS_AS(Instance::shortest_path(3, {{0, 1}}, 0, 2, {1.0}), Error);
    CHECK_THROWS_AS(Instance::shortest_path(2, {{0, 1}}, 0, 0, {1.0}), Error);
}

TEST_CASE("weighted sum on the diamond") {
    // P1 = arcs {0,1}: f1 = 0, f2 = 10. P2 = arcs {2,3}: f1 = 5, f2 = 0.
    Instance inst = diamond();
    Vec f1 = {0, 0, 2.5, 2.5};
    Vec f2 = {5, 5, 0, 0};

    Solution a = solve_weighted_sum(inst, f1, f2, 0.3);
    CHECK(a.x == BinVec{1, 1, 0, 0});

    // Tie at lambda = 0.5: both paths score 5; P2's incidence vector is
    // lexicographically smaller.
    Solution b = solve_weighted_sum(inst, f1, f2, 0.5);
    CHECK(b.x == BinVec{0, 0, 1, 1});

    Solution c = solve_weighted_sum(inst, f1, f2, 10.0, WeightedMode::LexF1);
    CHECK(c.x == BinVec{1, 1, 0, 0});
    Solution d = solve_weighted_sum(inst, f1, f2, 0.0, WeightedMode::LexF2);
    CHECK(d.x == BinVec{0, 0, 1, 1});
}

TEST_CASE("enumerate_feasible counts and order") {
    CHECK(enumerate_feasible(paper_assignment(), 10).size() == 6);
    CHECK(enumerate_feasible(diamond(), 10).size() == 2);
    CHECK(enumerate_feasible(Instance::unconstrained({1, 2, 3}), 10).size() == 8);

    auto sols = enumerate_feasible(paper_assignment(), 10);
    for (std::size_t i = 0; i + 1 < sols.size(); ++i)
        CHECK(lex_less(sols[i].x, sols[i + 1].x));

    CHECK_THROWS_AS(enumerate_feasible(paper_assignment(), 5), Error);
    CHECK_THROWS_AS(enumerate_feasible(Instance::unconstrained(Vec(20, 1.0)), 100),
                    Error);
}

TEST_CASE("solver agrees with enumeration on random instances") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Instance inst = random_assignment(3, 20, seed);
        Solution sol = solve_nominal(inst, inst.c_hat());
        CHECK(sol.c_hat_cost == doctest::Approx(brute_min(inst, inst.c_hat())));
    }
    int found = 0;
    for (std::uint64_t seed = 0; found < 20 && seed < 200; ++seed) {
        auto maybe = gen_random_digraph(6, seed);
        if (!maybe) continue;
        ++found;
        Solution sol = solve_nominal(*maybe, maybe->c_hat());
        CHECK(sol.c_hat_cost == doctest::Approx(brute_min(*maybe, maybe->c_hat())));
        CHECK(maybe->is_feasible(sol.x));
    }
    CHECK(found == 20);
}

TEST_CASE("weighted sum agrees with enumeration and ties break lexicographically") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = random_assignment(3, 10, seed);
        Vec f2 = gen_weights(inst.n(), 0, 5, seed + 1000);
        for (double lambda : {0.0, 0.5, 1.5}) {
            Solution sol = solve_weighted_sum(inst, inst.c_hat(), f2, lambda);
            Vec combined(inst.n());
            for (int i = 0; i < inst.n(); ++i)
                combined[i] = inst.c_hat()[i] + lambda * f2[i];
            double best = brute_min(inst, combined);
            CHECK(dot(combined, sol.x) == doctest::Approx(best));
            // Lexicographically smallest among the optima.
            for (const auto& alt : enumerate_feasible(inst, 100)) {
                if (dot(combined, alt.x) > best + 1e-9) continue;
                CHECK(!lex_less(alt.x, sol.x));
            }
        }
    }
}

TEST_CASE("lexicographic weighted mode is exact") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = random_assignment(3, 6, seed);
        Vec f2 = gen_weights(inst.n(), 0, 4, seed + 77);
        Solution sol = solve_weighted_sum(inst, inst.c_hat(), f2, 0.0, WeightedMode::LexF1);
        double best_f1 = brute_min(inst, inst.c_hat());
        CHECK(dot(inst.c_hat(), sol.x) == doctest::Approx(best_f1));
        double best_f2 = kInf;
        for (const auto& alt : enumerate_feasible(inst, 100))
            if (dot(inst.c_hat(), alt.x) <= best_f1 + 1e-9)
                best_f2 = std::min(best_f2, dot(f2, alt.x));
        CHECK(dot(f2, sol.x) == doctest::Approx(best_f2));
    }
}

TEST_CASE("determinism across repeated solves") {
    Instance inst = random_assignment(4, 15, 42);
    Solution first = solve_nominal(inst, inst.c_hat());
    for (int rep = 0; rep < 5; ++rep)
        CHECK(solve_nominal(inst, inst.c_hat()).x == first.x);
}

TEST_CASE("feasibility checks") {
    Instance sp = diamond();
    CHECK(sp.is_feasible({1, 1, 0, 0}));
    CHECK(!sp.is_feasible({1, 0, 0, 0}));
    CHECK(!sp.is_feasible({1, 1, 1, 1}));
    CHECK(!sp.is_feasible({0, 0, 0, 0}));
    CHECK_THROWS_AS(sp.make_solution({1, 0, 0, 0}), Error);

    Instance as = two_by_two();
    CHECK(as.is_feasible({1, 0, 0, 1}));
    CHECK(!as.is_feasible({1, 1, 0, 0}));

    // Every enumerated solution satisfies the feasible-set description.
    Instance pa = paper_assignment();
    for (const auto& s : enumerate_feasible(pa, 10)) {
        for (const auto& row : pa.polyhedron().rows) {
            double lhs = 0.0;
            for (auto [idx, coef] : row.coeffs) lhs += coef * (s.x[idx] ? 1.0 : 0.0);
            if (row.sense == 'E') CHECK(lhs == doctest::Approx(row.rhs));
            if (row.sense == 'G') CHECK(lhs >= row.rhs - 1e-9);
        }
    }
}

TEST_CASE("scenario solver handles negative costs") {
    Instance inst = two_by_two();
    Vec costs = {-5, 1, 1, -5};
    Solution sol = solve_scenario_min(inst, costs);
    CHECK(dot(costs, sol.x) == doctest::Approx(-10.0));

    Instance un = Instance::unconstrained({3, -2, 0});
    Solution s2 = solve_scenario_min(un, un.c_hat());
    CHECK(dot(un.c_hat(), s2.x) == doctest::Approx(-2.0));
}
