#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "vhardy/exponent.hpp"
#include "vhardy/grid.hpp"
#include "vhardy/rng.hpp"

namespace vhardy {

struct NormResult {
    double value = 0.0;
    double residual = 0.0;    // |rho(f/value) - 1| where applicable
    int iterations = 0;
    double maximizer = 0.0;   // maximizing level alpha* for the weak norm

    operator double() const { return value; }
};

// rho_{p(.)}(f) = h^n sum |f(x)|^{p(x)}; 0^{p(x)} contributes 0.
inline double modular(const GridFunction& f, const ExponentField& p) {
    if (!(f.grid == p.grid)) throw std::invalid_argument("modular: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f.v[i]);
        if (a > 0.0) s += std::pow(a, p.samples[i]);
    }
    return s * f.grid.cell_volume();
}

namespace detail {

// modular of f/lambda over precomputed (log|f_i|, p_i) pairs, log-space
inline double modular_scaled(const std::vector<double>& logf, const std::vector<double>& pe,
                             double mu, double cellvol) {
    double s = 0.0;
    for (std::size_t i = 0; i < logf.size(); ++i) {
        double a = pe[i] * (logf[i] - mu);
        if (a > 700.0) a = 700.0;
        s += std::exp(a);
    }
    return s * cellvol;
}

// solve rho(f/e^mu) = 1 by bracketing + bisection + Newton polish
struct LuxSolve {
    double lambda;
    double residual;
    int iterations;
};

inline LuxSolve solve_luxemburg(const std::vector<double>& logf, const std::vector<double>& pe,
                                double cellvol, double mu_lo, double mu_hi) {
    int iters = 0;
    auto F = [&](double mu) {
        ++iters;
        return modular_scaled(logf, pe, mu, cellvol);
    };
    // expand bracket until F(mu_lo) >= 1 >= F(mu_hi); F decreasing in mu
    double flo = F(mu_lo), fhi = F(mu_hi);
    int guard = 0;
    while (flo < 1.0 && guard++ < 200) {
        mu_lo -= 2.0;
        flo = F(mu_lo);
    }
    guard = 0;
    while (fhi > 1.0 && guard++ < 200) {
        mu_hi += 2.0;
        fhi = F(mu_hi);
    }
    if (flo < 1.0 || fhi > 1.0)
        throw std::runtime_error("luxemburg_norm: bracket failure, endpoints [" +
                                 std::to_string(std::exp(mu_lo)) + ", " + std::to_string(std::exp(mu_hi)) + "]");
    // bisection to moderate accuracy
    for (int it = 0; it < 80 && mu_hi - mu_lo > 1e-8; ++it) {
        const double mid = 0.5 * (mu_lo + mu_hi);
        if (F(mid) >= 1.0)
            mu_lo = mid;
        else
            mu_hi = mid;
    }
    // Newton polish on G(mu) = rho(e^{-mu} f) - 1; G'(mu) = -sum p_i * term_i
    double mu = 0.5 * (mu_lo + mu_hi);
    for (int it = 0; it < 60; ++it) {
        double s = 0.0, ds = 0.0;
        for (std::size_t i = 0; i < logf.size(); ++i) {
            double a = pe[i] * (logf[i] - mu);
            if (a > 700.0) a = 700.0;
            const double t = std::exp(a);
            s += t;
            ds += pe[i] * t;
        }
        s *= cellvol;
        ds *= cellvol;
        const double g = s - 1.0;
        if (std::abs(g) < 1e-13) break;
        double step = g / ds;  // mu <- mu + g/ds  (G' = -ds)
        if (!(std::isfinite(step))) break;
        if (mu + step <= mu_lo - 1.0 || mu + step >= mu_hi + 1.0) step = 0.0;
        if (step == 0.0) break;
        mu += step;
        ++iters;
    }
    LuxSolve out;
    out.lambda = std::exp(mu);
    out.residual = std::abs(modular_scaled(logf, pe, mu, cellvol) - 1.0);
    out.iterations = iters;
    return out;
}

}  // namespace detail

// Luxemburg quasi-norm: inf{lambda > 0 : rho(f/lambda) <= 1}.
inline NormResult luxemburg_norm(const GridFunction& f, const ExponentField& p) {
    if (!(f.grid == p.grid)) throw std::invalid_argument("luxemburg_norm: grid mismatch");
    std::vector<double> logf, pe;
    logf.reserve(f.size());
    pe.reserve(f.size());
    double fmax = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f.v[i]);
        if (a > 0.0) {
            logf.push_back(std::log(a));
            pe.push_back(p.samples[i]);
            fmax = std::max(fmax, a);
        }
    }
    NormResult r;
    if (logf.empty()) return r;
    const double n = p.grid.dim;
    const double L = p.grid.half_width;
    const double h = p.grid.spacing();
    const double mu_lo = std::log(fmax) + (n / p.p_minus) * std::log(h) - 3.0 * std::log(10.0);
    const double mu_hi = std::log(fmax) + (n / p.p_minus) * std::log(2.0 * L) + 3.0 * std::log(10.0);
    const auto sol = detail::solve_luxemburg(logf, pe, f.grid.cell_volume(), mu_lo, mu_hi);
    r.value = sol.lambda;
    r.residual = sol.residual;
    r.iterations = sol.iterations;
    return r;
}

// ||f||_{WL^{p(.)}} = sup_alpha alpha ||chi_{|f|>alpha}||; on sampled data the
// supremum is attained in the limit at the distinct magnitudes v_k, giving
// max_k v_k ||chi_{|f| >= v_k}||.
inline NormResult weak_norm(const GridFunction& f, const ExponentField& p) {
    if (!(f.grid == p.grid)) throw std::invalid_argument("weak_norm: grid mismatch");
    const double cellvol = f.grid.cell_volume();

    std::vector<std::size_t> idx;
    idx.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::abs(f.v[i]) > 0.0) idx.push_back(i);
    NormResult r;
    if (idx.empty()) return r;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double fa = std::abs(f.v[a]), fb = std::abs(f.v[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });

    // prefix p-ordering matching descending |f|
    std::vector<double> pe(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) pe[i] = p.samples[idx[i]];

    double best = 0.0, best_alpha = 0.0, best_res = 0.0;
    int total_iters = 0;

    if (p.constant()) {
        const double p0 = p.p_minus;
        std::size_t c = 0;
        while (c < idx.size()) {
            const double v = std::abs(f.v[idx[c]]);
            while (c < idx.size() && std::abs(f.v[idx[c]]) == v) ++c;
            const double lambda = std::pow(cellvol * static_cast<double>(c), 1.0 / p0);
            const double val = v * lambda;
            if (val > best) {
                best = val;
                best_alpha = v;
            }
        }
        r.value = best;
        r.maximizer = best_alpha;
        return r;
    }

    // variable exponent: warm-started Newton on S(mu) = cellvol * sum_{i<c} e^{-mu p_i} = 1
    double mu = 0.0;
    bool have_mu = false;
    double pmin_prefix = std::numeric_limits<double>::infinity();
    double pmax_prefix = 0.0;
    std::size_t c = 0;
    const std::vector<double> zero_logs;  // indicator has log|f| = 0 on its support
    while (c < idx.size()) {
        const double v = std::abs(f.v[idx[c]]);
        while (c < idx.size() && std::abs(f.v[idx[c]]) == v) {
            pmin_prefix = std::min(pmin_prefix, pe[c]);
            pmax_prefix = std::max(pmax_prefix, pe[c]);
            ++c;
        }
        const double meas = cellvol * static_cast<double>(c);
        const double ub = meas >= 1.0 ? std::pow(meas, 1.0 / pmin_prefix) : std::pow(meas, 1.0 / pmax_prefix);
        if (v * ub <= best) continue;
        // solve for the prefix indicator norm
        double lo = std::log(meas) / pmax_prefix - 1.0;
        double hi = std::log(meas) / pmin_prefix + 1.0;
        if (meas < 1.0) std::swap(lo, hi), lo -= 2.0, hi += 2.0;
        if (lo > hi) std::swap(lo, hi);
        if (!have_mu) mu = 0.5 * (lo + hi);
        mu = std::clamp(mu, lo, hi);
        double lambda = 0.0, res = 0.0;
        for (int it = 0; it < 100; ++it) {
            double s = 0.0, ds = 0.0;
            for (std::size_t i = 0; i < c; ++i) {
                double a = -pe[i] * mu;
                if (a > 700.0) a = 700.0;
                const double t = std::exp(a);
                s += t;
                ds += pe[i] * t;
            }
            s *= cellvol;
            ds *= cellvol;
            ++total_iters;
            const double g = s - 1.0;
            if (std::abs(g) < 1e-13) {
                res = std::abs(g);
                break;
            }
            if (g > 0.0)
                lo = std::max(lo, mu);
            else
                hi = std::min(hi, mu);
            double step = g / ds;
            double munew = mu + step;
            if (!(munew > lo && munew < hi)) munew = 0.5 * (lo + hi);
            res = std::abs(g);
            mu = munew;
        }
        have_mu = true;
        lambda = std::exp(mu);
        const double val = v * lambda;
        if (val > best) {
            best = val;
            best_alpha = v;
            best_res = res;
        }
    }
    r.value = best;
    r.maximizer = best_alpha;
    r.residual = best_res;
    r.iterations = total_iters;
    return r;
}

// classical L^q norm, q in (0, inf]
inline double lq_norm(const GridFunction& f, double q) {
    if (q == std::numeric_limits<double>::infinity()) return f.max_abs();
    if (!(q > 0.0)) throw std::invalid_argument("lq_norm: q must be positive");
    double s = 0.0;
    for (double x : f.v) {
        const double a = std::abs(x);
        if (a > 0.0) s += std::pow(a, q);
    }
    return std::pow(s * f.grid.cell_volume(), 1.0 / q);
}

// L^q norm restricted to a node mask
inline double lq_norm_masked(const GridFunction& f, double q, const std::vector<char>& mask) {
    if (q == std::numeric_limits<double>::infinity()) {
        double m = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (mask[i]) m = std::max(m, std::abs(f.v[i]));
        return m;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (mask[i]) {
            const double a = std::abs(f.v[i]);
            if (a > 0.0) s += std::pow(a, q);
        }
    return std::pow(s * f.grid.cell_volume(), 1.0 / q);
}

struct AxiomViolation {
    std::string axiom;
    std::uint64_t trial = 0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct AxiomReport {
    std::uint64_t trials = 0;
    std::vector<AxiomViolation> violations;
    double aoki_rolewicz_v = 0.0;   // exponent in force after any halving
    int aoki_halvings = 0;
    bool pass() const { return violations.empty(); }
};

namespace detail {

inline GridFunction random_piecewise(const GridSpec& g, Rng& rng, int pieces) {
    GridFunction f(g);
    const std::size_t N = g.points_per_dim;
    for (int k = 0; k < pieces; ++k) {
        const double height = rng.uniform(-2.0, 2.0);
        if (g.dim == 1) {
            std::size_t a = rng.uniform_index(N);
            std::size_t b = rng.uniform_index(N);
            if (a > b) std::swap(a, b);
            for (std::size_t i = a; i <= b; ++i) f.v[i] += height;
        } else {
            std::size_t ax = rng.uniform_index(N), bx = rng.uniform_index(N);
            std::size_t ay = rng.uniform_index(N), by = rng.uniform_index(N);
            if (ax > bx) std::swap(ax, bx);
            if (ay > by) std::swap(ay, by);
            for (std::size_t ix = ax; ix <= bx; ++ix)
                for (std::size_t iy = ay; iy <= by; ++iy) f.v[g.index(ix, iy)] += height;
        }
    }
    return f;
}

}  // namespace detail

// Randomized verification of the quasi-norm axioms (Lemma 2.8-style weak
// triangle, the strong p-underline triangle, reverse Minkowski for p_+ < 1,
// homogeneity, and the Aoki-Rolewicz power triangle).
inline AxiomReport quasinorm_axiom_report(const ExponentField& p, std::uint64_t trials, std::uint64_t seed) {
    AxiomReport rep;
    rep.trials = trials;
    Rng rng(seed);
    const double pu = p.p_underline;
    double v_ar = pu / (1.0 + pu);
    const double tol = 1e-10;

    for (std::uint64_t t = 0; t < trials; ++t) {
        GridFunction f = detail::random_piecewise(p.grid, rng, 3);
        GridFunction g = detail::random_piecewise(p.grid, rng, 3);

        const double wf = weak_norm(f, p).value;
        const double wg = weak_norm(g, p).value;
        const double sf = luxemburg_norm(f, p).value;
        const double sg = luxemburg_norm(g, p).value;

        // homogeneity on both norms
        const double lam = rng.uniform(0.25, 4.0);
        GridFunction lf = lam * f;
        const double wlf = weak_norm(lf, p).value;
        const double slf = luxemburg_norm(lf, p).value;
        const double scale = std::max(1.0, std::abs(lam) * std::max(wf, sf));
        if (std::abs(wlf - lam * wf) > 1e-12 * scale + 1e-14)
            rep.violations.push_back({"homogeneity-weak", t, wlf, lam * wf});
        if (std::abs(slf - lam * sf) > 1e-12 * scale + 1e-14)
            rep.violations.push_back({"homogeneity-strong", t, slf, lam * sf});

        // weak quasi-triangle (Lemma 2.8(iii))
        GridFunction fg = f + g;
        const double wfg = weak_norm(fg, p).value;
        const double lhs_w = std::pow(wfg, pu);
        const double rhs_w = std::pow(2.0, pu) * (std::pow(wf, pu) + std::pow(wg, pu));
        if (lhs_w > rhs_w * (1.0 + tol))
            rep.violations.push_back({"weak-quasi-triangle", t, lhs_w, rhs_w});

        // strong p-underline triangle (Remark 2.1(i))
        const double sfg = luxemburg_norm(fg, p).value;
        if (std::pow(sfg, pu) > (std::pow(sf, pu) + std::pow(sg, pu)) * (1.0 + tol))
            rep.violations.push_back({"strong-p-triangle", t, std::pow(sfg, pu),
                                      std::pow(sf, pu) + std::pow(sg, pu)});

        // reverse Minkowski for nonnegative f, g when p_+ < 1 (Remark 2.1(iv))
        if (p.p_plus < 1.0) {
            GridFunction fa = f, ga = g;
            for (double& x : fa.v) x = std::abs(x);
            for (double& x : ga.v) x = std::abs(x);
            const double na = luxemburg_norm(fa, p).value;
            const double nb = luxemburg_norm(ga, p).value;
            const double nab = luxemburg_norm(fa + ga, p).value;
            if (na + nb > nab * (1.0 + tol))
                rep.violations.push_back({"reverse-minkowski", t, na + nb, nab});
        }

        // Aoki-Rolewicz power triangle over a small family
        const int R = 2 + static_cast<int>(rng.uniform_index(4));
        std::vector<GridFunction> fam;
        GridFunction sum(p.grid);
        double rhs_ar = 0.0;
        for (int j = 0; j < R; ++j) {
            GridFunction fj = detail::random_piecewise(p.grid, rng, 2);
            for (double& x : fj.v) x = std::abs(x);
            sum += fj;
            rhs_ar += std::pow(weak_norm(fj, p).value, v_ar);
            fam.push_back(std::move(fj));
        }
        double lhs_ar = std::pow(weak_norm(sum, p).value, v_ar);
        while (lhs_ar > 4.0 * rhs_ar * (1.0 + tol) && rep.aoki_halvings < 8) {
            v_ar *= 0.5;
            ++rep.aoki_halvings;
            lhs_ar = std::pow(weak_norm(sum, p).value, v_ar);
            rhs_ar = 0.0;
            for (const auto& fj : fam) rhs_ar += std::pow(weak_norm(fj, p).value, v_ar);
        }
        if (lhs_ar > 4.0 * rhs_ar * (1.0 + tol))
            rep.violations.push_back({"aoki-rolewicz", t, lhs_ar, 4.0 * rhs_ar});
    }
    rep.aoki_rolewicz_v = v_ar;
    return rep;
}

struct FatouReport {
    bool precondition_ok = false;
    bool pass = false;
    double limit_norm = 0.0;
    double liminf_norm = 0.0;
    double tail_gap = 0.0;   // spread of the tail norms (finite-truncation allowance)
};

// Fatou property of the weak quasi-norm along a pointwise-convergent sequence.
// The infinite liminf is approximated by the tail minimum; the tail spread is
// granted as allowance since a finite tail of a convergent norm sequence
// underestimates its limit by exactly that order.
inline FatouReport fatou_check(const std::vector<GridFunction>& fk, const ExponentField& p) {
    FatouReport rep;
    if (fk.size() < 3) return rep;
    // settling criterion: successive sup-differences must decay toward the tail
    std::vector<double> d(fk.size() - 1);
    for (std::size_t k = 0; k + 1 < fk.size(); ++k) {
        double m = 0.0;
        for (std::size_t i = 0; i < fk[k].size(); ++i)
            m = std::max(m, std::abs(fk[k + 1].v[i] - fk[k].v[i]));
        d[k] = m;
    }
    const double dmax = *std::max_element(d.begin(), d.end());
    rep.precondition_ok = (dmax == 0.0) || (d.back() < 0.9 * dmax) || (d.back() < 1e-12);
    if (!rep.precondition_ok) return rep;

    const GridFunction& f = fk.back();
    rep.limit_norm = weak_norm(f, p).value;
    const std::size_t tail_len = std::max<std::size_t>(2, fk.size() / 4);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t k = fk.size() - tail_len; k < fk.size(); ++k) {
        const double w = weak_norm(fk[k], p).value;
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    rep.liminf_norm = lo;
    rep.tail_gap = hi - lo;
    rep.pass = rep.limit_norm <= lo + rep.tail_gap + 1e-10 * std::max(1.0, lo);
    return rep;
}

}  // namespace vhardy
