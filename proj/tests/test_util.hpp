#ifndef VARROB_TEST_UTIL_HPP
#define VARROB_TEST_UTIL_HPP

#include <algorithm>
#include <vector>

#include "varrob/generators.hpp"
#include "varrob/instance.hpp"
#include "varrob/solve.hpp"

namespace varrob::testutil {

// 3x3 assignment with cells a..i row-major; costs 4,1,1,7,5,4,8,4,8.
// The minimum matching cost is 12, attained by both {a,f,h} and {c,d,h}.
inline Instance paper_assignment() {
    return Instance::assignment(3, {4, 1, 1, 7, 5, 4, 8, 4, 8});
}

inline BinVec afh() { return {1, 0, 0, 0, 0, 1, 0, 1, 0}; }
inline BinVec cdh() { return {0, 0, 1, 1, 0, 0, 0, 1, 0}; }

// 2x2 assignment [[1,2],[2,1]]: diagonal costs 2, anti-diagonal 4.
inline Instance two_by_two() { return Instance::assignment(2, {1, 2, 2, 1}); }
inline BinVec diag2() { return {1, 0, 0, 1}; }
inline BinVec anti2() { return {0, 1, 1, 0}; }

// Diamond: two disjoint 2-arc paths from 0 to 3.
// arcs: 0:(0,1) 1:(1,3) 2:(0,2) 3:(2,3)
inline Instance diamond(Vec costs = {1, 1, 1, 1}) {
    return Instance::shortest_path(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, 0, 3,
                                   std::move(costs));
}

// Exhaustive minimizer used as the solver oracle.
inline double brute_min(const Instance& inst, const Vec& costs,
                        std::size_t limit = 100000) {
    auto all = enumerate_feasible(inst, limit);
    double best = kInf;
    for (const auto& s : all) best = std::min(best, dot(costs, s.x));
    return best;
}

inline Instance random_assignment(int p, int c_max, std::uint64_t seed) {
    return gen_assignment(p, c_max, seed);
}

inline Instance random_unconstrained(int n, int lo, int hi, std::uint64_t seed) {
    Rng rng(seed);
    Vec c(n);
    for (auto& v : c) v = rng.uniform_int(lo, hi);
    return Instance::unconstrained(std::move(c));
}

} // namespace varrob::testutil

#endif
