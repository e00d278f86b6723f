#include "backlund/errors.hpp"
#include "backlund/residual_checker.hpp"
#include "backlund/vectors_grid.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace backlund;
using testing::Rng;

namespace {

const cplx I(0.0, 1.0);

GridSpec line_grid(int n, double x0, double x1) {
    GridSpec g;
    g.origin = {x0, 0.0, 0.0};
    g.extent = {x1 - x0, 1.0, 1.0};
    g.points = {n, 5, 5};
    return g;
}

}  // namespace

TEST_SUITE("vectors_grid") {

TEST_CASE("cross product of basis vectors") {
    const ComplexVec3 c = cross(ComplexVec3(cplx(1), 0, 0), ComplexVec3(0, cplx(1), 0));
    CHECK(c == ComplexVec3(0, 0, cplx(1)));
    const ComplexVec3 ci = cross(ComplexVec3(I, 0, 0), ComplexVec3(0, cplx(1), 0));
    CHECK(ci == ComplexVec3(0, 0, I));
}

TEST_CASE("cross of a vector with itself vanishes") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const ComplexVec3 a = rng.cvec();
        CHECK(norm(cross(a, a)) == 0.0);
    }
}

TEST_CASE("unconjugated dot product") {
    CHECK(dot(ComplexVec3(cplx(1), 0, 0), ComplexVec3(0, cplx(1), 0)) == cplx(0));
    CHECK(dot(ComplexVec3(cplx(1), cplx(1), 0), ComplexVec3(cplx(1), cplx(1), 0)) == cplx(2));
    CHECK(dot(ComplexVec3(I, 0, 0), ComplexVec3(I, 0, 0)) == cplx(-1));
    CHECK(dot(RealVec3{0, 0, 1}, ComplexVec3(0, 0, I)) == I);
}

TEST_CASE("norm is zero only for the zero vector") {
    CHECK(norm2(ComplexVec3{}) == 0.0);
    CHECK(norm2(ComplexVec3(0, I, 0)) == 1.0);
    CHECK(norm(ComplexVec3(cplx(3), cplx(0, 4), 0)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(normalized(RealVec3{}), ParameterError);
    CHECK(norm(normalized(RealVec3{3, 4, 12})) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("property: cross product is antisymmetric") {
    Rng rng(101);
    for (int i = 0; i < 200; ++i) {
        const ComplexVec3 a = rng.cvec(-5, 5);
        const ComplexVec3 b = rng.cvec(-5, 5);
        CHECK(testing::vec_dist(cross(a, b), -cross(b, a)) <= 1e-14 * (1.0 + norm(a) * norm(b)));
    }
}

TEST_CASE("property: cross product is orthogonal to its real factors") {
    Rng rng(102);
    for (int i = 0; i < 200; ++i) {
        const RealVec3 a = rng.vec(-3, 3);
        const RealVec3 b = rng.vec(-3, 3);
        const RealVec3 c = cross(a, b);
        const double s = norm(a) * norm(a) * norm(b);
        CHECK(std::abs(dot(c, a)) <= 1e-14 * s);
        CHECK(std::abs(dot(c, b)) <= 1e-14 * norm(a) * norm(b) * norm(b));
    }
}

TEST_CASE("property: BAC-CAB expansion") {
    Rng rng(103);
    for (int i = 0; i < 200; ++i) {
        const RealVec3 a = rng.vec(-2, 2);
        const RealVec3 b = rng.vec(-2, 2);
        const RealVec3 c = rng.vec(-2, 2);
        const RealVec3 lhs = cross(a, cross(b, c));
        const RealVec3 rhs = dot(a, c) * b - dot(a, b) * c;
        CHECK(norm(lhs - rhs) <= 1e-13 * (1.0 + norm(a) * norm(b) * norm(c)));
    }
}

TEST_CASE("grid validation") {
    GridSpec g;
    CHECK_NOTHROW(g.validate());
    g.points[1] = 4;
    CHECK_THROWS_AS(g.validate(), GridError);
    g = GridSpec{};
    g.t_points = 3;
    CHECK_THROWS_AS(g.validate(), GridError);
    g = GridSpec{};
    g.extent.z = 0.0;
    CHECK_THROWS_AS(g.validate(), GridError);
    g = GridSpec{};
    g.t_extent = -1.0;
    CHECK_THROWS_AS(g.validate(), GridError);
}

TEST_CASE("flat index round-trip, x slowest and t fastest") {
    GridSpec g;
    g.points = {5, 6, 7};
    g.t_points = 8;
    CHECK(g.node_count() == 5u * 6u * 7u * 8u);
    CHECK(flat_index(g, {0, 0, 0, 1}) == 1u);
    CHECK(flat_index(g, {0, 0, 1, 0}) == 8u);
    CHECK(flat_index(g, {1, 0, 0, 0}) == 6u * 7u * 8u);
    for (std::size_t f = 0; f < g.node_count(); f += 37) {
        CHECK(flat_index(g, node_index(g, f)) == f);
    }
}

TEST_CASE("sampling a constant field") {
    GridSpec g;
    const ComplexVec3 c(cplx(1, 2), cplx(-3), I);
    const SampledField s = sample([&](const RealVec3&, double) { return c; }, g);
    CHECK(s.values.size() == g.node_count());
    for (const auto& v : s.values) {
        CHECK(v == c);
    }
}

TEST_CASE("sampling the x coordinate on a 5-point axis") {
    GridSpec g = line_grid(5, 0.0, 1.0);
    const SampledField s = sample([](const RealVec3& r, double) { return ComplexVec3(cplx(r.x), 0, 0); }, g);
    const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i < 5; ++i) {
        CHECK(s.at({i, 2, 2, 0}).x.real() == expected[i]);
    }
}

TEST_CASE("sampling a plane wave matches direct evaluation") {
    GridSpec g;
    g.extent = {2.0, 3.0, 4.0};
    g.t_extent = 5.0;
    const RealVec3 kvec{0.3, -1.1, 0.7};
    const ComplexVec3 E0(cplx(1, 1), cplx(0, 2), cplx(-1));
    const VectorField wave = [&](const RealVec3& r, double t) {
        return std::exp(I * (dot(kvec, r) - 0.9 * t)) * E0;
    };
    const SampledField s = sample(wave, g);
    for (std::size_t f = 0; f < g.node_count(); ++f) {
        const NodeIndex n = node_index(g, f);
        const RealVec3 r = position(g, n);
        const double t = g.coordinate(Axis::T, n[3]);
        const ComplexVec3 direct = std::exp(I * (kvec.x * r.x + kvec.y * r.y + kvec.z * r.z - 0.9 * t)) * E0;
        CHECK(testing::vec_dist(s.values[f], direct) <= 1e-15 * norm(E0) * 4);
    }
}

TEST_CASE("sampling failures carry the node index") {
    GridSpec g;
    const std::size_t bad = flat_index(g, {2, 1, 3, 4});
    const VectorField f = [&](const RealVec3& r, double t) {
        const NodeIndex n = {static_cast<int>(std::lround(r.x * 4)), static_cast<int>(std::lround(r.y * 4)),
                             static_cast<int>(std::lround(r.z * 4)), static_cast<int>(std::lround(t * 4))};
        if (flat_index(g, n) == bad) {
            return ComplexVec3(cplx(std::nan("")), 0, 0);
        }
        return ComplexVec3{};
    };
    try {
        sample(f, g);
        FAIL("expected SampleError");
    } catch (const SampleError& e) {
        CHECK(e.node() == bad);
    }
    const VectorField thrower = [](const RealVec3&, double) -> ComplexVec3 { throw DomainError("outside"); };
    try {
        sample(thrower, g);
        FAIL("expected SampleError");
    } catch (const SampleError& e) {
        CHECK(e.node() == 0u);
        CHECK(std::string(e.what()).find("outside") != std::string::npos);
    }
}

TEST_CASE("central differences are exact on low-degree polynomials") {
    const GridSpec g = line_grid(9, -1.0, 1.0);
    const SampledField lin = sample([](const RealVec3& r, double) { return ComplexVec3(cplx(3.0 * r.x + 1.0), 0, 0); }, g);
    const SampledField quad = sample([](const RealVec3& r, double) { return ComplexVec3(cplx(r.x * r.x), 0, 0); }, g);
    for (int i = 2; i <= 6; ++i) {
        CHECK(central_diff(lin, Axis::X, 1, {i, 2, 2, 2}).x.real() == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(central_diff(quad, Axis::X, 2, {i, 2, 2, 2}).x.real() == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("central difference of sin at zero matches the Taylor prediction") {
    for (double h : {0.1, 0.05, 0.025}) {
        const GridSpec g = line_grid(5, -2.0 * h, 2.0 * h);
        const SampledField s = sample([](const RealVec3& r, double) { return ComplexVec3(cplx(std::sin(r.x)), 0, 0); }, g);
        const double d = central_diff(s, Axis::X, 1, {2, 2, 2, 2}).x.real();
        const double hh = g.spacing(Axis::X);
        CHECK(d == doctest::Approx(std::sin(hh) / hh).epsilon(1e-14));
        // Taylor: sin(h)/h = 1 - h^2/6 + h^4/120 - ...
        CHECK(std::abs(d - (1.0 - hh * hh / 6.0)) <= hh * hh * hh * hh / 100.0);
    }
}

TEST_CASE("central difference rejects boundary nodes and bad orders") {
    const GridSpec g;
    const SampledField s = sample([](const RealVec3&, double) { return ComplexVec3{}; }, g);
    CHECK_THROWS_AS(central_diff(s, Axis::X, 1, {0, 2, 2, 2}), GridError);
    CHECK_THROWS_AS(central_diff(s, Axis::T, 2, {2, 2, 2, 1}), GridError);
    CHECK_NOTHROW(central_diff(s, Axis::T, 2, {2, 2, 2, 2}));
    CHECK_NOTHROW(central_diff(s, Axis::Y, 1, {0, 1, 0, 0}));
    CHECK_THROWS_AS(central_diff(s, Axis::Y, 3, {2, 2, 2, 2}), ParameterError);
    try {
        central_diff(s, Axis::Z, 1, {2, 2, 4, 2});
    } catch (const GridError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('z') != std::string::npos);
        CHECK(msg.find('4') != std::string::npos);
    }
}

TEST_CASE("property: first-order central differences converge at second order") {
    Rng rng(104);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = rng.uniform(0.5, 2.0);
        const double b = rng.uniform(-1.0, 1.0);
        const double x0 = rng.uniform(-1.0, 1.0);
        const auto f = [&](double x) { return std::sin(a * x + b) * std::exp(0.3 * x); };
        const auto fp = [&](double x) {
            return a * std::cos(a * x + b) * std::exp(0.3 * x) + 0.3 * std::sin(a * x + b) * std::exp(0.3 * x);
        };
        std::vector<double> hs, errs;
        for (int level = 0; level < 4; ++level) {
            const double h = 0.1 / std::pow(2.0, level);
            const GridSpec g = line_grid(5, x0 - 2 * h, x0 + 2 * h);
            const SampledField s = sample([&](const RealVec3& r, double) { return ComplexVec3(cplx(f(r.x)), 0, 0); }, g);
            hs.push_back(g.spacing(Axis::X));
            errs.push_back(std::abs(central_diff(s, Axis::X, 1, {2, 2, 2, 2}).x.real() - fp(x0)));
        }
        const ConvergenceReport rep = fit_convergence("d/dx", hs, errs);
        CHECK(rep.slope == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("interior test honours the shell width") {
    const GridSpec g;
    CHECK(is_interior(g, {1, 1, 1, 1}, 1));
    CHECK_FALSE(is_interior(g, {1, 1, 1, 1}, 2));
    CHECK(is_interior(g, {2, 2, 2, 2}, 2));
    CHECK_FALSE(is_interior(g, {2, 2, 2, 4}, 1));
}

}  // TEST_SUITE
