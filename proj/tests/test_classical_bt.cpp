#include "backlund/classical_bt.hpp"
#include "backlund/errors.hpp"
#include "backlund/residual_checker.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace backlund;
using namespace backlund::classical;
using testing::Rng;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

ScalarField2D field(std::function<double(double, double)> f, std::function<double(double, double)> fx,
                    std::function<double(double, double)> ft) {
    return {std::move(f), std::move(fx), std::move(ft)};
}

double max_abs(const ResidualPair& r) {
    return std::max(std::abs(r.r1), std::abs(r.r2));
}

// Admissible Liouville points: C - (x+t)/sqrt2 >= margin.
Point2 liouville_point(Rng& rng, double C) {
    for (;;) {
        const Point2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        if (C - (p.x + p.t) / kSqrt2 > 0.2) {
            return p;
        }
    }
}

}  // namespace

TEST_SUITE("classical_bt") {

TEST_CASE("Cauchy-Riemann residual examples") {
    HarmonicPoly u;
    u.set(2, 0, 0.5);
    u.set(0, 2, -0.5);
    HarmonicPoly v;
    v.set(1, 1, 1.0);
    Rng rng(201);
    for (int i = 0; i < 20; ++i) {
        const Point2 p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        CHECK(max_abs(cauchy_riemann_residual(u.to_field(), v.to_field(), p)) == 0.0);
    }
    CHECK(max_abs(cauchy_riemann_residual(zero_field(), zero_field(), {0.4, -0.7})) == 0.0);

    const ResidualPair r = cauchy_riemann_residual(v.to_field(), v.to_field(), {1.0, 2.0});
    CHECK(r.r1 == doctest::Approx(1.0));
    CHECK(r.r2 == doctest::Approx(3.0));
}

TEST_CASE("integrating the seed xy gives (x^2 - y^2)/2") {
    HarmonicPoly v;
    v.set(1, 1, 1.0);
    const HarmonicPoly u = integrate_cauchy_riemann(v);
    CHECK(u.coeff(2, 0) == 0.5);
    CHECK(u.coeff(0, 2) == -0.5);
    CHECK(u.coeff(0, 0) == 0.0);
    CHECK(u.coeff(1, 1) == 0.0);
    CHECK(u.scale() == 0.5);
}

TEST_CASE("integrating the zero polynomial gives zero") {
    const HarmonicPoly u = integrate_cauchy_riemann(HarmonicPoly{});
    CHECK(u.scale() == 0.0);
}

TEST_CASE("integrating x^3 y - x y^3 zeroes the residual at random points") {
    HarmonicPoly v;
    v.set(3, 1, 1.0);
    v.set(1, 3, -1.0);
    const ScalarField2D u = integrate_cauchy_riemann(v).to_field();
    const ScalarField2D vf = v.to_field();
    Rng rng(202);
    for (int i = 0; i < 100; ++i) {
        const Point2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(max_abs(cauchy_riemann_residual(u, vf, p)) <= 1e-12 * 50.0);
    }
}

TEST_CASE("non-harmonic seeds are rejected with the offending coefficient") {
    HarmonicPoly v;
    v.set(2, 0, 1.0);  // Laplacian = 2
    try {
        integrate_cauchy_riemann(v);
        FAIL("expected NotHarmonicError");
    } catch (const NotHarmonicError& e) {
        CHECK(e.x_power() == 0);
        CHECK(e.y_power() == 0);
        CHECK(e.coefficient() == doctest::Approx(2.0));
    }
}

TEST_CASE("degree cap") {
    HarmonicPoly p(3);
    CHECK_NOTHROW(p.set(3, 0, 1.0));
    CHECK_THROWS_AS(p.set(2, 2, 1.0), ParameterError);
    CHECK(HarmonicPoly{}.max_degree() == 8);
}

TEST_CASE("property: harmonic polynomials from real parts of z^n") {
    // Re((x + i y)^n) and Im((x + i y)^n) with random weights.
    Rng rng(203);
    for (int trial = 0; trial < 20; ++trial) {
        HarmonicPoly v;
        for (int n = 1; n <= 6; ++n) {
            const double a = rng.uniform(-1, 1);
            const double b = rng.uniform(-1, 1);
            double binom = 1.0;
            for (int j = 0; j <= n; ++j) {
                // i^j term of (x + iy)^n: binom * x^{n-j} y^j * i^j
                const int m = j % 4;
                const double re = (m == 0) ? 1.0 : (m == 2 ? -1.0 : 0.0);
                const double im = (m == 1) ? 1.0 : (m == 3 ? -1.0 : 0.0);
                v.add(n - j, j, binom * (a * re + b * im));
                binom = binom * (n - j) / (j + 1);
            }
        }
        const HarmonicPoly lap = v.laplacian();
        CHECK(lap.scale() <= 1e-10 * v.scale());
        const ScalarField2D u = integrate_cauchy_riemann(v).to_field();
        const ScalarField2D vf = v.to_field();
        for (int i = 0; i < 20; ++i) {
            const Point2 p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            CHECK(max_abs(cauchy_riemann_residual(u, vf, p)) <= 1e-12 * 100.0 * v.scale());
        }
    }
}

TEST_CASE("conjugate parameters of the quadratic Laplace family") {
    LaplaceQuadParams q = laplace_conjugate_params(1, 0, 0);
    CHECK(q.kappa == 2.0);
    CHECK(q.lambda == 0.0);
    CHECK(q.mu == 0.0);
    q = laplace_conjugate_params(0, 0, 0);
    CHECK(q.kappa == 0.0);
    CHECK(q.lambda == 0.0);
    CHECK(q.mu == 0.0);
    q = laplace_conjugate_params(3, -1, 2);
    CHECK(q.kappa == 6.0);
    CHECK(q.lambda == -2.0);
    CHECK(q.mu == -1.0);
    Rng rng(204);
    for (int i = 0; i < 20; ++i) {
        const Point2 p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        CHECK(max_abs(cauchy_riemann_residual(q.u_poly().to_field(), q.v_poly().to_field(), p)) == 0.0);
    }
}

TEST_CASE("property: conjugate parameters always give a zero residual") {
    Rng rng(205);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.uniform(-5, 5);
        const double b = rng.uniform(-5, 5);
        const double c = rng.uniform(-5, 5);
        const LaplaceQuadParams q = laplace_conjugate_params(a, b, c);
        CHECK(q.u_poly().laplacian().scale() == 0.0);
        CHECK(q.v_poly().laplacian().scale() == 0.0);
        const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1.0}) * 10.0;
        for (int i = 0; i < 20; ++i) {
            const Point2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            CHECK(max_abs(cauchy_riemann_residual(q.u_poly().to_field(), q.v_poly().to_field(), p)) <=
                  1e-12 * scale);
        }
    }
}

TEST_CASE("counter-example: u = a xy, v = b xy is not conjugate") {
    HarmonicPoly u;
    u.set(1, 1, 1.0);
    const ResidualPair r = cauchy_riemann_residual(u.to_field(), u.to_field(), {1.0, 1.0});
    CHECK(std::hypot(r.r1, r.r2) > 0.1);
    CHECK(max_abs(r) >= 0.5);
}

TEST_CASE("Liouville solution values and domain guard") {
    const ScalarField2D u = liouville_solution(2.0);
    CHECK(u({0.0, 0.0}) == doctest::Approx(-2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(u({0.0, 0.0}) == doctest::Approx(-1.386294).epsilon(1e-6));
    for (double C : {1.0, 2.0, 3.5}) {
        const ScalarField2D uc = liouville_solution(C);
        const double s = kSqrt2 * (C - 1.0);
        CHECK(std::abs(uc({0.3 * s, 0.7 * s})) <= 1e-15);
    }
    CHECK_THROWS_AS(u({kSqrt2, kSqrt2}), DomainError);
    CHECK_THROWS_AS(u({5.0, 0.0}), DomainError);
    CHECK_THROWS_AS(u.dx(5.0, 0.0), DomainError);
}

TEST_CASE("Liouville solution satisfies the PDE with analytic second partials") {
    const ScalarField2D u = liouville_solution(2.0);
    CHECK(std::abs(testing::liouville_uxt(2.0, 1.0, 1.0) - std::exp(u({1.0, 1.0}))) <= 1e-10);
    Rng rng(206);
    for (int i = 0; i < 50; ++i) {
        const Point2 p = liouville_point(rng, 2.0);
        CHECK(testing::rel(testing::liouville_uxt(2.0, p.x, p.t), std::exp(u(p))) <= 1e-12);
    }
}

TEST_CASE("Liouville BT residual") {
    const ScalarField2D u = liouville_solution(2.0);
    Rng rng(207);
    for (int i = 0; i < 100; ++i) {
        CHECK(max_abs(liouville_bt_residual(u, zero_field(), liouville_point(rng, 2.0))) < 1e-10);
    }
    const ResidualPair trivial = liouville_bt_residual(zero_field(), zero_field(), {0.3, 0.4});
    CHECK(trivial.r1 == doctest::Approx(-kSqrt2));
    CHECK(trivial.r2 == doctest::Approx(-kSqrt2));

    // v = x t at (0.1, 0.2), direct substitution.
    const ScalarField2D v = field([](double x, double t) { return x * t; }, [](double, double t) { return t; },
                                  [](double x, double) { return x; });
    const Point2 p{0.1, 0.2};
    const double w = 2.0 - (p.x + p.t) / kSqrt2;
    const double uu = -2.0 * std::log(w);
    const double ud = kSqrt2 / w;
    const double vv = p.x * p.t;
    const ResidualPair r = liouville_bt_residual(u, v, p);
    CHECK(r.r1 == doctest::Approx(ud + p.t - kSqrt2 * std::exp((uu - vv) / 2)).epsilon(1e-14));
    CHECK(r.r2 == doctest::Approx(ud - p.x - kSqrt2 * std::exp((uu + vv) / 2)).epsilon(1e-14));
    CHECK(max_abs(r) > 0.01);
}

TEST_CASE("Liouville PDE residual") {
    const ScalarField2D u = liouville_solution(2.0);
    Rng rng(208);
    for (int i = 0; i < 50; ++i) {
        const Point2 p = liouville_point(rng, 2.0);
        // Leading central-difference error of u_xt: (h^2/6) d^2/dx^2 (C - w)^-2 = h^2 / (2 (C - w)^4).
        const double q = 2.0 - (p.x + p.t) / kSqrt2;
        const double h = kDefaultMixedStep;
        const double leading = h * h / (2.0 * std::pow(q, 4));
        CHECK(std::abs(liouville_pde_residual(u, p) - leading) <= 1e-2 * leading + 1e-10);
    }
    CHECK(liouville_pde_residual(zero_field(), {0.5, 0.5}) == -1.0);
    const ScalarField2D lin = field([](double x, double t) { return x + t; }, [](double, double) { return 1.0; },
                                    [](double, double) { return 1.0; });
    CHECK(liouville_pde_residual(lin, {0.0, 0.0}) == -1.0);
}

TEST_CASE("sine-Gordon kink values") {
    CHECK_THROWS_AS(sine_gordon_kink(1.0, 0.0), ParameterError);
    const ScalarField2D zero = sine_gordon_kink(0.0, 1.3);
    CHECK(zero({0.7, -0.2}) == 0.0);
    CHECK(zero.dx(0.7, -0.2) == 0.0);
    CHECK(sine_gordon_kink(1.0, 1.0)({0.0, 0.0}) == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    // Far tails stay finite.
    const ScalarField2D k = sine_gordon_kink(1.0, 2.0);
    CHECK(k({400.0, 0.0}) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(std::isfinite(k.dx(400.0, 0.0)));
    CHECK(k({-400.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("sine-Gordon kink satisfies the PDE") {
    Rng rng(209);
    for (int i = 0; i < 50; ++i) {
        const double x = rng.uniform(-2, 2);
        const double t = rng.uniform(-2, 2);
        const ScalarField2D u = sine_gordon_kink(1.0, 2.0);
        // Analytic oracle for u_xt.
        CHECK(std::abs(testing::sine_gordon_uxt(1.0, 2.0, x, t) - std::sin(u({x, t}))) <= 1e-12);
        // Finite-differenced mixed partial.
        CHECK(std::abs(sine_gordon_pde_residual(u, {x, t}, 1e-5)) < 1e-8);
        CHECK(std::abs(sine_gordon_pde_residual(sine_gordon_kink(1.0, 1.0), {x, t})) < 1e-8);
    }
    CHECK(sine_gordon_pde_residual(zero_field(), {0.2, 0.1}) == 0.0);
    CHECK(sine_gordon_pde_residual(constant_field(std::numbers::pi / 2), {0.2, 0.1}) == -1.0);
}

TEST_CASE("sine-Gordon BT residual") {
    Rng rng(210);
    for (double a : {1.0, 2.0, -0.5}) {
        const ScalarField2D u = sine_gordon_kink(1.0, a);
        for (int i = 0; i < 100; ++i) {
            const Point2 p{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            CHECK(max_abs(sine_gordon_bt_residual(u, zero_field(), a, p)) < 1e-10);
        }
    }
    CHECK(max_abs(sine_gordon_bt_residual(zero_field(), zero_field(), 1.7, {0.3, 0.3})) == 0.0);
    CHECK_THROWS_AS(sine_gordon_bt_residual(zero_field(), zero_field(), 0.0, {0.0, 0.0}), ParameterError);

    const ScalarField2D u = sine_gordon_kink(1.0, 2.0);
    int nonzero = 0;
    for (int i = 0; i < 20; ++i) {
        const Point2 p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        nonzero += max_abs(sine_gordon_bt_residual(u, zero_field(), 1.0, p)) > 1e-3;
    }
    CHECK(nonzero == 20);
}

TEST_CASE("property: BT residual zero implies PDE residuals converge") {
    const ScalarField2D u = liouville_solution(2.0);
    Rng rng(211);
    for (int i = 0; i < 10; ++i) {
        const Point2 p = liouville_point(rng, 2.0);
        REQUIRE(max_abs(liouville_bt_residual(u, zero_field(), p)) < 1e-10);
        CHECK(std::abs(wave_xt_residual(zero_field(), p)) == 0.0);
        std::vector<double> hs, res;
        for (int level = 0; level < 4; ++level) {
            hs.push_back(1e-2 / std::pow(2.0, level));
            res.push_back(std::abs(liouville_pde_residual(u, p, hs.back())));
        }
        const ConvergenceReport rep = fit_convergence("liouville", hs, res);
        CHECK(rep.slope == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("property: analytic first partials agree with central differences at second order") {
    Rng rng(212);
    const std::vector<std::pair<const char*, ScalarField2D>> families = {
        {"liouville", liouville_solution(2.0)},
        {"kink a=1", sine_gordon_kink(1.0, 1.0)},
        {"kink a=2", sine_gordon_kink(0.7, 2.0)},
        {"laplace", laplace_conjugate_params(1.5, -0.3, 0.8).u_poly().to_field()},
    };
    for (const auto& [name, u] : families) {
        CAPTURE(name);
        for (int i = 0; i < 5; ++i) {
            const Point2 p = liouville_point(rng, 2.0);
            std::vector<double> hs, ex, et;
            for (int level = 0; level < 4; ++level) {
                const double h = 1e-2 / std::pow(2.0, level);
                hs.push_back(h);
                ex.push_back(std::abs((u.value(p.x + h, p.t) - u.value(p.x - h, p.t)) / (2 * h) - u.dx(p.x, p.t)));
                et.push_back(std::abs((u.value(p.x, p.t + h) - u.value(p.x, p.t - h)) / (2 * h) - u.dt(p.x, p.t)));
            }
            const double floor = 1e-10 * (1.0 + std::abs(u.dx(p.x, p.t)));
            const std::vector<double> floors(hs.size(), floor);
            const ConvergenceReport rx = fit_convergence("dx", hs, ex, floors);
            const ConvergenceReport rt = fit_convergence("dt", hs, et, floors);
            CHECK(rx.order_within(2.0, 0.1));
            CHECK(rt.order_within(2.0, 0.1));
        }
    }
}

}  // TEST_SUITE
