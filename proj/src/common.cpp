#include "varrob/common.hpp"

namespace varrob {

bool cholesky(const Mat& q, Mat* lower, double tol) {
    if (q.rows != q.cols) return false;
    int n = q.rows;
    Mat l(n, n);
    for (int j = 0; j < n; ++j) {
        double diag = q.at(j, j);
        for (int k = 0; k < j; ++k) diag -= l.at(j, k) * l.at(j, k);
        if (diag <= tol) return false;
        l.at(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = q.at(i, j);
            for (int k = 0; k < j; ++k) s -= l.at(i, k) * l.at(j, k);
            l.at(i, j) = s / l.at(j, j);
        }
    }
    if (lower) *lower = std::move(l);
    return true;
}

} // namespace varrob
