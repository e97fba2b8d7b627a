#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "vhardy/norms.hpp"
#include "vhardy/rng.hpp"

using namespace vhardy;

namespace {

GridFunction interval_indicator(const GridSpec& g, double a, double b, double height = 1.0) {
    GridFunction f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g.coord(i);
        if (x >= a && x < b) f.v[i] = height;
    }
    return f;
}

GridFunction random_pc(const GridSpec& g, Rng& rng, int pieces = 3) {
    GridFunction f(g);
    for (int k = 0; k < pieces; ++k) {
        std::size_t a = rng.uniform_index(g.points_per_dim);
        std::size_t b = rng.uniform_index(g.points_per_dim);
        if (a > b) std::swap(a, b);
        const double v = rng.uniform(-2.0, 2.0);
        for (std::size_t i = a; i <= b; ++i) f.v[i] += v;
    }
    return f;
}

}  // namespace

TEST_CASE("modular closed forms", "[norms]") {
    GridSpec g(1, 4.0, 512);
    auto p3 = make_exponent(ExponentRecipe::constant(3.0), g);
    auto pb = make_exponent(ExponentRecipe::bump(0.9, 1.4, 3.0), g);

    auto chi = interval_indicator(g, 0.0, 1.0);
    CHECK(modular(chi, p3) == Catch::Approx(1.0).margin(g.spacing()));
    CHECK(modular(chi, pb) == Catch::Approx(1.0).margin(g.spacing()));

    auto f2 = interval_indicator(g, 0.0, 1.0, 2.0);
    CHECK(modular(f2, p3) == Catch::Approx(8.0).margin(8.0 * g.spacing()));

    // variable p: independent direct summation oracle
    const double c = 1.7;
    auto fc = interval_indicator(g, -1.0, 1.5, c);
    double oracle = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(i);
        if (x >= -1.0 && x < 1.5) oracle += std::pow(c, pb.samples[i]);
    }
    oracle *= g.spacing();
    CHECK(modular(fc, pb) == Catch::Approx(oracle).epsilon(1e-13));

    CHECK(modular(GridFunction(g), pb) == 0.0);
}

TEST_CASE("luxemburg norm of indicators", "[norms]") {
    GridSpec g(1, 4.0, 512);
    auto p2 = make_exponent(ExponentRecipe::constant(2.0), g);

    auto chi1 = interval_indicator(g, 0.0, 1.0);
    auto r1 = luxemburg_norm(chi1, p2);
    CHECK(r1.value == Catch::Approx(1.0).margin(2.0 * g.spacing()));
    CHECK(r1.residual < 1e-10);

    auto chi4 = interval_indicator(g, 0.0, 0.25);
    CHECK(luxemburg_norm(chi4, p2).value == Catch::Approx(0.5).margin(2.0 * g.spacing()));

    CHECK(luxemburg_norm(GridFunction(g), p2).value == 0.0);
}

TEST_CASE("luxemburg vs independent root-finder oracle", "[norms]") {
    // f = 2 chi_[0,1], exponent ramping 1 -> 2 over [0,1]
    GridSpec g(1, 4.0, 512);
    std::vector<double> ps(g.size(), 1.5);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(i);
        if (x < 0.0)
            ps[i] = 1.0;
        else if (x <= 1.0)
            ps[i] = 1.0 + x;
        else
            ps[i] = 2.0;
    }
    auto p = make_exponent_from_samples(g, std::move(ps));
    auto f = interval_indicator(g, 0.0, 1.0, 2.0);

    // independent bisection on the analytic integrand sampled at the nodes
    auto rho = [&](double lam) {
        double s = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.coord(i);
            if (x >= 0.0 && x < 1.0) s += std::pow(2.0 / lam, 1.0 + x);
        }
        return s * g.spacing();
    };
    double lo = 1e-3, hi = 1e3;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (rho(mid) >= 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double oracle = 0.5 * (lo + hi);
    CHECK(luxemburg_norm(f, p).value == Catch::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("weak norm of indicator; maximizer", "[norms]") {
    GridSpec g(1, 4.0, 512);
    auto p2 = make_exponent(ExponentRecipe::constant(2.0), g);
    auto chi = interval_indicator(g, 0.0, 1.0);
    auto w = weak_norm(chi, p2);
    CHECK(w.value == Catch::Approx(1.0).margin(2.0 * g.spacing()));
    CHECK(w.maximizer == 1.0);
}

TEST_CASE("weak norm of 1/|x| at p=1 equals 2", "[norms]") {
    GridSpec g(1, 4.0, 512);
    auto p1 = make_exponent(ExponentRecipe::constant(1.0), g);
    GridFunction f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g.coord(i);
        f.v[i] = x == 0.0 ? 0.0 : 1.0 / std::abs(x);
    }
    CHECK(weak_norm(f, p1).value == Catch::Approx(2.0).margin(3.0 * g.spacing()));
}

TEST_CASE("power identity (weak norms)", "[norms]") {
    GridSpec g(1, 4.0, 256);
    auto p = make_exponent(ExponentRecipe::bump(0.9, 1.3, 3.0), g);
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction f = random_pc(g, rng);
        for (double s : {0.5, 2.0, 3.0}) {
            ExponentField sp = p.scaled(s);
            GridFunction fs(g);
            for (std::size_t i = 0; i < f.size(); ++i) fs.v[i] = std::pow(std::abs(f.v[i]), s);
            const double lhs = weak_norm(fs, p).value;
            const double rhs = std::pow(weak_norm(f, sp).value, s);
            REQUIRE(lhs == Catch::Approx(rhs).epsilon(1e-10).margin(1e-12));
        }
    }
}

TEST_CASE("weak norm <= strong norm", "[norms]") {
    GridSpec g(1, 4.0, 256);
    auto p = make_exponent(ExponentRecipe::bump(0.8, 1.5, 3.0), g);
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        GridFunction f = random_pc(g, rng);
        const double w = weak_norm(f, p).value;
        const double s = luxemburg_norm(f, p).value;
        REQUIRE(w <= s * (1.0 + 1e-10));
    }
}

TEST_CASE("lq norms", "[norms]") {
    GridSpec g(1, 8.0, 1024);
    auto chi = interval_indicator(g, 0.0, 1.0);
    CHECK(lq_norm(chi, 2.0) == Catch::Approx(1.0).margin(2.0 * g.spacing()));

    auto tri = interval_indicator(g, -1.0, 1.0, 3.0);
    CHECK(lq_norm(tri, std::numeric_limits<double>::infinity()) == 3.0);

    GridFunction gauss(g);
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(i);
        gauss.v[i] = std::exp(-pi * x * x);
    }
    CHECK(lq_norm(gauss, 2.0) == Catch::Approx(std::pow(2.0, -0.25)).margin(1e-10));
}

TEST_CASE("monotonicity of both norms", "[norms]") {
    GridSpec g(1, 4.0, 256);
    auto p = make_exponent(ExponentRecipe::bump(0.9, 1.2, 3.0), g);
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        GridFunction f = random_pc(g, rng);
        GridFunction habs = random_pc(g, rng);
        GridFunction gbig(g);
        for (std::size_t i = 0; i < f.size(); ++i)
            gbig.v[i] = std::abs(f.v[i]) + std::abs(habs.v[i]);
        REQUIRE(luxemburg_norm(f, p).value <= luxemburg_norm(gbig, p).value * (1.0 + 1e-10));
        REQUIRE(weak_norm(f, p).value <= weak_norm(gbig, p).value * (1.0 + 1e-10));
    }
}

TEST_CASE("Lemma 2.3 sandwich for nested balls", "[norms]") {
    GridSpec g(1, 8.0, 1024);
    auto p = make_exponent(ExponentRecipe::bump(0.9, 1.4, 4.0), g);
    Ball b1(0.0, 0.25), b2(0.0, 4.0);
    const double n1 = luxemburg_norm(indicator(g, b1), p).value;
    const double n2 = luxemburg_norm(indicator(g, b2), p).value;
    const double m1 = ball_measure(g, b1), m2 = ball_measure(g, b2);
    const double ratio = std::log(n1 / n2) / std::log(m1 / m2);
    CHECK(ratio >= 1.0 / p.p_plus - 0.2);
    CHECK(ratio <= 1.0 / p.p_minus + 0.2);
}

TEST_CASE("quasi-norm axiom report", "[norms]") {
    GridSpec g(1, 4.0, 128);
    auto p = make_exponent(ExponentRecipe::bump(0.8, 1.3, 3.0), g);
    auto rep = quasinorm_axiom_report(p, 40, 77);
    CHECK(rep.pass());
    CHECK(rep.trials == 40);

    // reverse Minkowski closed form: p = 1/2, f = g = chi_B
    auto ph = make_exponent(ExponentRecipe::constant(0.5), g);
    auto chi = interval_indicator(g, -1.0, 1.0);
    const double nf = luxemburg_norm(chi, ph).value;
    const double meas = integrate(chi);
    CHECK(nf == Catch::Approx(meas * meas).epsilon(1e-9));
    GridFunction two = 2.0 * chi;
    const double n2 = luxemburg_norm(two, ph).value;
    CHECK(nf + nf <= n2 * (1.0 + 1e-10));
    CHECK(n2 == Catch::Approx(2.0 * nf).epsilon(1e-9));

    auto repc = quasinorm_axiom_report(ph, 25, 3);
    CHECK(repc.pass());

    // ||0|| = 0
    CHECK(weak_norm(GridFunction(g), p).value == 0.0);
}

TEST_CASE("fatou check", "[norms]") {
    GridSpec g(1, 4.0, 256);
    auto p = make_exponent(ExponentRecipe::bump(0.9, 1.2, 3.0), g);
    auto chi = interval_indicator(g, -1.0, 1.0);

    std::vector<GridFunction> seq;
    for (int k = 1; k <= 8; ++k) seq.push_back((1.0 - 1.0 / k) * chi);
    auto rep = fatou_check(seq, p);
    CHECK(rep.precondition_ok);
    CHECK(rep.pass);

    // alternating sequence: precondition rejected
    auto chiA = interval_indicator(g, -1.0, 0.0);
    auto chiB = interval_indicator(g, 0.0, 2.0);
    std::vector<GridFunction> alt;
    for (int k = 0; k < 8; ++k) alt.push_back(k % 2 == 0 ? chiA : chiB);
    CHECK_FALSE(fatou_check(alt, p).precondition_ok);

    // truncations of 1/|x|: equality within 1e-6
    GridFunction f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = g.coord(i);
        f.v[i] = x == 0.0 ? 0.0 : 1.0 / std::abs(x);
    }
    std::vector<GridFunction> trunc;
    for (double k : {8.0, 16.0, 32.0, 64.0, 1e9}) {
        GridFunction fk(g);
        for (std::size_t i = 0; i < f.size(); ++i) fk.v[i] = std::min(f.v[i], k);
        trunc.push_back(fk);
    }
    auto rt = fatou_check(trunc, p);
    CHECK(rt.precondition_ok);
    CHECK(rt.pass);
    CHECK(rt.limit_norm == Catch::Approx(rt.liminf_norm).epsilon(1e-6));
}

TEST_CASE("luxemburg modular residual on random bank", "[norms]") {
    GridSpec g(1, 4.0, 256);
    auto p = make_exponent(ExponentRecipe::bump(0.8, 1.6, 3.0), g);
    Rng rng(31337);
    for (int t = 0; t < 50; ++t) {
        GridFunction f = random_pc(g, rng);
        if (f.max_abs() == 0.0) continue;
        auto r = luxemburg_norm(f, p);
        REQUIRE(r.residual <= 1e-10);
    }
}
