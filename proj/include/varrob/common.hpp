#ifndef VARROB_COMMON_HPP
#define VARROB_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace varrob {

using Vec = std::vector<double>;
using BinVec = std::vector<std::uint8_t>;

/// Absolute comparison tolerance used throughout. Costs are stored as
/// doubles; instances are small-integer valued, so 1e-9 sits far below
/// the data grid.
inline constexpr double kTol = 1e-9;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool approx_eq(double a, double b, double tol = kTol) {
    return std::fabs(a - b) <= tol;
}

inline double dot(const Vec& c, const BinVec& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) s += c[i];
    return s;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Lexicographic order on incidence vectors; the deterministic tie-break
/// used by all solvers.
inline bool lex_less(const BinVec& a, const BinVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Dense row-major matrix, sized for desk-scale models.
struct Mat {
    int rows = 0;
    int cols = 0;
    Vec a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

/// Cholesky factorization of a symmetric matrix. Returns false when the
/// matrix is not positive definite (pivot below tol).
bool cholesky(const Mat& q, Mat* lower, double tol = 1e-12);

/// Portable deterministic RNG (splitmix64). Seeded runs must reproduce
/// bit-identical streams across platforms, which rules out the
/// implementation-defined std distributions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
    /// draw unbiased and platform-independent.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw Error("uniform_int: empty range");
        std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<int>(v % span);
    }

    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }
};

} // namespace varrob

#endif // VARROB_COMMON_HPP
