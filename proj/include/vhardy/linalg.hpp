#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace vhardy {

// dense row-major n x n solve by Gaussian elimination with partial pivoting;
// returns false on (near-)singular pivot
inline bool solve_dense(std::vector<double> a, std::vector<double>& b, std::size_t n) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-300) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        const double d = a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] / d;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri * n + c] * b[c];
        b[ri] = s / a[ri * n + ri];
    }
    return true;
}

// crude 1-norm condition estimate via explicit inverse (matrices here are tiny)
inline double condition_1norm(const std::vector<double>& a, std::size_t n) {
    auto norm1 = [&](const std::vector<double>& m) {
        double best = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += std::abs(m[r * n + c]);
            best = std::max(best, s);
        }
        return best;
    };
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> e(n, 0.0);
        e[c] = 1.0;
        if (!solve_dense(a, e, n)) return std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < n; ++r) inv[r * n + c] = e[r];
    }
    return norm1(a) * norm1(inv);
}

}  // namespace vhardy
