#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "vhardy/grid.hpp"

namespace vhardy {

struct LogHolderCertificate {
    double c_log = 0.0;
    double c_infinity = 0.0;
    double p_infinity = 0.0;
    bool pass = false;
};

// Sampled variable exponent p(.) with its extremal values and the log-Holder
// certificates estimated from the node samples.
struct ExponentField {
    GridSpec grid;
    std::vector<double> samples;
    double p_minus = 0.0;
    double p_plus = 0.0;
    double p_underline = 0.0;   // min{p_minus, 1}
    double p_infinity = 0.0;
    double c_log = 0.0;
    double c_infinity = 0.0;

    std::size_t size() const { return samples.size(); }
    double operator[](std::size_t i) const { return samples[i]; }
    bool constant() const { return p_minus == p_plus; }

    ExponentField scaled(double r) const {
        ExponentField q = *this;
        for (double& p : q.samples) p *= r;
        q.p_minus *= r;
        q.p_plus *= r;
        q.p_underline = std::min(q.p_minus, 1.0);
        q.p_infinity *= r;
        q.c_log *= r;
        q.c_infinity *= r;
        return q;
    }
};

namespace detail {

inline void fill_extremes(ExponentField& f) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double p : f.samples) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    f.p_minus = lo;
    f.p_plus = hi;
    f.p_underline = std::min(lo, 1.0);
}

inline double node_abs(const GridSpec& g, std::size_t flat) {
    if (g.dim == 1) return std::abs(g.coord(flat));
    const std::size_t N = g.points_per_dim;
    const double x = g.coord(flat / N);
    const double y = g.coord(flat % N);
    return std::sqrt(x * x + y * y);
}

inline double node_dist(const GridSpec& g, std::size_t a, std::size_t b) {
    if (g.dim == 1) return std::abs(g.coord(a) - g.coord(b));
    const std::size_t N = g.points_per_dim;
    const double dx = g.coord(a / N) - g.coord(b / N);
    const double dy = g.coord(a % N) - g.coord(b % N);
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace detail

// Recipes for admissible exponents. The step recipe is intentionally absent:
// discontinuous exponents are constructed only through raw samples.
struct ExponentRecipe {
    enum class Kind { Constant, AffineClamped, Bump } kind = Kind::Constant;
    double c = 2.0;           // constant value
    double p0 = 1.0;          // far value (affine/bump)
    double p1 = 2.0;          // near/center value
    double slope = 0.5;       // affine slope
    double radius = 4.0;      // bump radius

    static ExponentRecipe constant(double v) {
        ExponentRecipe r;
        r.kind = Kind::Constant;
        r.c = v;
        return r;
    }
    static ExponentRecipe affine_clamped(double p0, double p1, double slope) {
        ExponentRecipe r;
        r.kind = Kind::AffineClamped;
        r.p0 = p0;
        r.p1 = p1;
        r.slope = slope;
        return r;
    }
    static ExponentRecipe bump(double far_value, double center_value, double radius) {
        ExponentRecipe r;
        r.kind = Kind::Bump;
        r.p0 = far_value;
        r.p1 = center_value;
        r.radius = radius;
        return r;
    }
};

LogHolderCertificate validate_log_holder(ExponentField& f);

inline ExponentField make_exponent_from_samples(const GridSpec& grid, std::vector<double> samples) {
    if (grid.size() < 2) throw std::invalid_argument("make_exponent: degenerate grid");
    for (double p : samples)
        if (!(p > 0.0) || !std::isfinite(p))
            throw std::invalid_argument("make_exponent: exponent values must lie in (0, inf)");
    ExponentField f;
    f.grid = grid;
    f.samples = std::move(samples);
    detail::fill_extremes(f);
    f.p_infinity = f.p_minus;
    return f;
}

inline ExponentField make_exponent(const ExponentRecipe& recipe, const GridSpec& grid) {
    std::vector<double> s(grid.size());
    switch (recipe.kind) {
        case ExponentRecipe::Kind::Constant:
            std::fill(s.begin(), s.end(), recipe.c);
            break;
        case ExponentRecipe::Kind::AffineClamped: {
            const double lo = std::min(recipe.p0, recipe.p1);
            const double hi = std::max(recipe.p0, recipe.p1);
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double x = grid.dim == 1 ? grid.coord(i) : grid.coord(i / grid.points_per_dim);
                s[i] = std::clamp(recipe.p0 + recipe.slope * x, lo, hi);
            }
            break;
        }
        case ExponentRecipe::Kind::Bump: {
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double r = detail::node_abs(grid, i) / recipe.radius;
                double b = 0.0;
                if (r < 1.0) b = std::exp(1.0 - 1.0 / (1.0 - r * r));
                s[i] = recipe.p0 + (recipe.p1 - recipe.p0) * b;
            }
            break;
        }
    }
    return make_exponent_from_samples(grid, std::move(s));
}

// c_log := max over node pairs of |p(x)-p(y)| log(e + 1/|x-y|);
// p_infinity minimizes sup_x |p(x)-q| log(e+|x|) (golden-section; the
// objective is a max of convex functions of q, hence convex).
inline LogHolderCertificate validate_log_holder(ExponentField& f) {
    const GridSpec& g = f.grid;
    const std::size_t n = f.size();
    if (n < 2) throw std::invalid_argument("validate_log_holder: need at least two nodes");

    const double e = 2.71828182845904523536028747135266250;
    double clog = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double d = detail::node_dist(g, a, b);
            const double val = std::abs(f.samples[a] - f.samples[b]) * std::log(e + 1.0 / d);
            clog = std::max(clog, val);
        }
    }

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::log(e + detail::node_abs(g, i));
    auto sup_at = [&](double q) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(f.samples[i] - q) * w[i]);
        return m;
    };
    double lo = f.p_minus, hi = f.p_plus;
    const double gr = 0.61803398874989484820458683436563812;
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    double fa = sup_at(a), fb = sup_at(b);
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - gr * (hi - lo);
            fa = sup_at(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + gr * (hi - lo);
            fb = sup_at(b);
        }
    }
    const double q = 0.5 * (lo + hi);

    LogHolderCertificate cert;
    cert.c_log = clog;
    cert.p_infinity = q;
    cert.c_infinity = sup_at(q);
    cert.pass = std::isfinite(cert.c_log) && std::isfinite(cert.c_infinity);
    f.c_log = cert.c_log;
    f.c_infinity = cert.c_infinity;
    f.p_infinity = cert.p_infinity;
    return cert;
}

// pointwise p*(x) = p(x)/(p(x)-1); requires p_minus > 1
inline ExponentField conjugate_exponent(const ExponentField& p) {
    if (!(p.p_minus > 1.0))
        throw std::invalid_argument("conjugate_exponent: requires p_minus > 1");
    std::vector<double> s(p.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = p.samples[i] / (p.samples[i] - 1.0);
    return make_exponent_from_samples(p.grid, std::move(s));
}

}  // namespace vhardy
