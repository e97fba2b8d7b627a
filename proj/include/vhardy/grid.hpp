#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vhardy {

// Uniform grid on the box [-L, L)^n, n in {1,2}, N nodes per axis (power of two).
// Node coordinates: x_j = -L + j*h with h = 2L/N.
// "margin" is the fraction of the box (per side) kept sample-free for zero
// padding; margin = 0 means periodic mode (no free-space emulation).
struct GridSpec {
    int dim = 1;
    double half_width = 8.0;
    std::size_t points_per_dim = 512;
    double support_margin = 0.25;

    GridSpec() = default;
    GridSpec(int n, double L, std::size_t N, double margin = 0.25)
        : dim(n), half_width(L), points_per_dim(N), support_margin(margin) {
        if (n != 1 && n != 2) throw std::invalid_argument("GridSpec: dim must be 1 or 2");
        if (L <= 0.0) throw std::invalid_argument("GridSpec: half_width must be positive");
        if (N < 2 || (N & (N - 1)) != 0)
            throw std::invalid_argument("GridSpec: points_per_dim must be a power of two >= 2");
        if (!(margin >= 0.0 && margin < 0.5))
            throw std::invalid_argument("GridSpec: margin must lie in [0, 1/2)");
    }

    double spacing() const { return 2.0 * half_width / static_cast<double>(points_per_dim); }
    std::size_t size() const {
        std::size_t s = points_per_dim;
        for (int k = 1; k < dim; ++k) s *= points_per_dim;
        return s;
    }
    double cell_volume() const {
        double v = spacing();
        for (int k = 1; k < dim; ++k) v *= spacing();
        return v;
    }
    // node coordinate along one axis
    double coord(std::size_t j) const { return -half_width + static_cast<double>(j) * spacing(); }
    // signed periodic offset coordinate along one axis (FFT kernel layout)
    double offset(std::size_t j) const {
        const std::size_t N = points_per_dim;
        return (j < N / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(N)) * spacing();
    }
    std::size_t index(std::size_t ix, std::size_t iy = 0) const {
        return dim == 1 ? ix : ix * points_per_dim + iy;
    }
    // largest convolution scale admissible for the zero-padding margin
    double max_scale() const {
        return support_margin > 0.0 ? half_width * support_margin : 0.5 * half_width;
    }
    bool operator==(const GridSpec& o) const {
        return dim == o.dim && half_width == o.half_width &&
               points_per_dim == o.points_per_dim && support_margin == o.support_margin;
    }
};

// Real samples on a grid.
struct GridFunction {
    GridSpec grid;
    std::vector<double> v;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& g, double fill = 0.0) : grid(g), v(g.size(), fill) {}
    GridFunction(const GridSpec& g, std::vector<double> samples) : grid(g), v(std::move(samples)) {
        if (v.size() != g.size()) throw std::invalid_argument("GridFunction: sample count mismatch");
    }

    std::size_t size() const { return v.size(); }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    }

    GridFunction& operator+=(const GridFunction& o) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
        return *this;
    }
    GridFunction& operator*=(double c) {
        for (double& x : v) x *= c;
        return *this;
    }
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }
};

// h^n * sum of samples: the box quadrature realizing the integral.
inline double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s * f.grid.cell_volume();
}

struct Ball {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 1.0;

    Ball() = default;
    Ball(double c, double r) : center{c, 0.0}, radius(r) {
        if (r <= 0.0) throw std::invalid_argument("Ball: radius must be positive");
    }
    Ball(std::array<double, 2> c, double r) : center(c), radius(r) {
        if (r <= 0.0) throw std::invalid_argument("Ball: radius must be positive");
    }
    Ball scaled(double factor) const {
        Ball b = *this;
        b.radius *= factor;
        return b;
    }
};

inline double dist2(const GridSpec& g, const Ball& b, std::size_t flat) {
    if (g.dim == 1) {
        const double dx = g.coord(flat) - b.center[0];
        return dx * dx;
    }
    const std::size_t N = g.points_per_dim;
    const double dx = g.coord(flat / N) - b.center[0];
    const double dy = g.coord(flat % N) - b.center[1];
    return dx * dx + dy * dy;
}

// closed-ball node membership: |x - c| <= r
inline bool ball_contains(const GridSpec& g, const Ball& b, std::size_t flat) {
    return dist2(g, b, flat) <= b.radius * b.radius * (1.0 + 1e-14);
}

inline GridFunction indicator(const GridSpec& g, const Ball& b) {
    GridFunction f(g);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (ball_contains(g, b, i)) f.v[i] = 1.0;
    return f;
}

// discrete measure of the ball: h^n * #nodes
inline double ball_measure(const GridSpec& g, const Ball& b) {
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (ball_contains(g, b, i)) ++cnt;
    return static_cast<double>(cnt) * g.cell_volume();
}

// Dyadic cube of the box: generation g has side 2L * 2^-g; corner holds the
// per-axis index of the cube in its generation.
struct DyadicCube {
    int generation = 0;
    std::array<std::size_t, 2> corner{0, 0};

    double side(const GridSpec& g) const { return 2.0 * g.half_width / static_cast<double>(std::size_t{1} << generation); }
    std::size_t nodes_per_axis(const GridSpec& g) const { return g.points_per_dim >> generation; }
    // lowest node index along an axis
    std::size_t first_node(const GridSpec& g, int axis) const { return corner[static_cast<std::size_t>(axis)] * nodes_per_axis(g); }
    double low_coord(const GridSpec& g, int axis) const { return g.coord(first_node(g, axis)); }
    double center_coord(const GridSpec& g, int axis) const { return low_coord(g, axis) + 0.5 * side(g); }
};

inline bool cube_contains_node(const GridSpec& g, const DyadicCube& q, std::size_t flat) {
    const std::size_t per = q.nodes_per_axis(g);
    if (g.dim == 1) {
        const std::size_t lo = q.first_node(g, 0);
        return flat >= lo && flat < lo + per;
    }
    const std::size_t N = g.points_per_dim;
    const std::size_t ix = flat / N, iy = flat % N;
    const std::size_t lx = q.first_node(g, 0), ly = q.first_node(g, 1);
    return ix >= lx && ix < lx + per && iy >= ly && iy < ly + per;
}

}  // namespace vhardy
