#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "vhardy/grid.hpp"

namespace vhardy {

using cplx = std::complex<double>;

namespace detail {

// iterative radix-2 Cooley-Tukey; length must be a power of two
inline void fft_pow2(cplx* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846264338327950288;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx t = w * a[i + k + len / 2];
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) a[i] *= inv;
    }
}

}  // namespace detail

// forward: F[k] = sum_j f[j] e^{-2 pi i jk/N}; inverse includes 1/N^dim
inline void fft(std::vector<cplx>& a, const GridSpec& g, bool inverse) {
    const std::size_t N = g.points_per_dim;
    if (a.size() != g.size()) throw std::invalid_argument("fft: size mismatch");
    if (g.dim == 1) {
        detail::fft_pow2(a.data(), N, inverse);
        return;
    }
    // rows
    for (std::size_t r = 0; r < N; ++r) detail::fft_pow2(a.data() + r * N, N, inverse);
    // columns
    std::vector<cplx> col(N);
    for (std::size_t c = 0; c < N; ++c) {
        for (std::size_t r = 0; r < N; ++r) col[r] = a[r * N + c];
        detail::fft_pow2(col.data(), N, inverse);
        for (std::size_t r = 0; r < N; ++r) a[r * N + c] = col[r];
    }
}

inline std::vector<cplx> fft_of(const GridFunction& f) {
    std::vector<cplx> a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = cplx(f.v[i], 0.0);
    fft(a, f.grid, false);
    return a;
}

inline GridFunction ifft_real(std::vector<cplx> a, const GridSpec& g) {
    fft(a, g, true);
    GridFunction out(g);
    for (std::size_t i = 0; i < a.size(); ++i) out.v[i] = a[i].real();
    return out;
}

// frequency (cycles per unit length) of bin m along one axis
inline double freq_of_bin(const GridSpec& g, std::size_t m) {
    const std::size_t N = g.points_per_dim;
    const double idx = (m <= N / 2) ? static_cast<double>(m)
                                    : static_cast<double>(m) - static_cast<double>(N);
    return idx / (2.0 * g.half_width);
}

// |xi| of a flat spectral index
inline double freq_radius(const GridSpec& g, std::size_t flat) {
    if (g.dim == 1) return std::abs(freq_of_bin(g, flat));
    const std::size_t N = g.points_per_dim;
    const double fx = freq_of_bin(g, flat / N);
    const double fy = freq_of_bin(g, flat % N);
    return std::sqrt(fx * fx + fy * fy);
}

// cyclic convolution with quadrature weight: (f * k)(x) ~ h^n sum_y f(y) k(x-y)
inline GridFunction convolve(const GridFunction& f, const GridFunction& kernel) {
    if (!(f.grid == kernel.grid)) throw std::invalid_argument("convolve: grids differ");
    std::vector<cplx> a = fft_of(f);
    std::vector<cplx> b = fft_of(kernel);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    GridFunction out = ifft_real(std::move(a), f.grid);
    out *= f.grid.cell_volume();
    return out;
}

inline GridFunction convolve_spectrum(const GridFunction& f, const std::vector<cplx>& kernel_hat) {
    std::vector<cplx> a = fft_of(f);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= kernel_hat[i];
    GridFunction out = ifft_real(std::move(a), f.grid);
    out *= f.grid.cell_volume();
    return out;
}

}  // namespace vhardy
