#include "backlund/classical_bt.hpp"

#include "backlund/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace backlund::classical {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double mixed_partial(const ScalarField2D& u, const Point2& p, double h) {
    if (!(h > 0.0)) {
        throw ParameterError("finite-difference step must be positive");
    }
    return (u.dt(p.x + h, p.t) - u.dt(p.x - h, p.t)) / (2.0 * h);
}

void require_nonzero_a(double a) {
    if (a == 0.0 || !std::isfinite(a)) {
        throw ParameterError("sine-Gordon parameter a must be finite and nonzero");
    }
}

}  // namespace

ScalarField2D zero_field() {
    return constant_field(0.0);
}

ScalarField2D constant_field(double c) {
    auto zero = [](double, double) { return 0.0; };
    return {[c](double, double) { return c; }, zero, zero};
}

// ---------------------------------------------------------------------------
// HarmonicPoly

HarmonicPoly::HarmonicPoly(int max_degree) : max_degree_(max_degree) {
    if (max_degree < 0) {
        throw ParameterError("polynomial degree cap must be nonnegative");
    }
    const auto n = static_cast<std::size_t>(max_degree + 1);
    c_.assign(n * n, 0.0);
}

std::size_t HarmonicPoly::slot(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(max_degree_ + 1) +
           static_cast<std::size_t>(j);
}

double HarmonicPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > max_degree_) {
        return 0.0;
    }
    return c_[slot(i, j)];
}

void HarmonicPoly::set(int i, int j, double c) {
    if (i < 0 || j < 0 || i + j > max_degree_) {
        std::ostringstream msg;
        msg << "term x^" << i << " y^" << j << " exceeds the degree cap " << max_degree_;
        throw ParameterError(msg.str());
    }
    c_[slot(i, j)] = c;
}

HarmonicPoly& HarmonicPoly::add(int i, int j, double c) {
    set(i, j, coeff(i, j) + c);
    return *this;
}

double HarmonicPoly::value(double x, double y) const {
    double sum = 0.0;
    for (int i = 0; i <= max_degree_; ++i) {
        for (int j = 0; i + j <= max_degree_; ++j) {
            const double c = c_[slot(i, j)];
            if (c != 0.0) {
                sum += c * std::pow(x, i) * std::pow(y, j);
            }
        }
    }
    return sum;
}

double HarmonicPoly::dx(double x, double y) const {
    double sum = 0.0;
    for (int i = 1; i <= max_degree_; ++i) {
        for (int j = 0; i + j <= max_degree_; ++j) {
            const double c = c_[slot(i, j)];
            if (c != 0.0) {
                sum += c * i * std::pow(x, i - 1) * std::pow(y, j);
            }
        }
    }
    return sum;
}

double HarmonicPoly::dy(double x, double y) const {
    double sum = 0.0;
    for (int i = 0; i <= max_degree_; ++i) {
        for (int j = 1; i + j <= max_degree_; ++j) {
            const double c = c_[slot(i, j)];
            if (c != 0.0) {
                sum += c * j * std::pow(x, i) * std::pow(y, j - 1);
            }
        }
    }
    return sum;
}

HarmonicPoly HarmonicPoly::laplacian() const {
    HarmonicPoly out(max_degree_);
    for (int i = 0; i <= max_degree_; ++i) {
        for (int j = 0; i + j + 2 <= max_degree_; ++j) {
            const double lap = (i + 2) * (i + 1) * coeff(i + 2, j) + (j + 2) * (j + 1) * coeff(i, j + 2);
            out.set(i, j, lap);
        }
    }
    return out;
}

double HarmonicPoly::scale() const {
    double s = 0.0;
    for (double c : c_) {
        s = std::max(s, std::abs(c));
    }
    return s;
}

ScalarField2D HarmonicPoly::to_field() const {
    HarmonicPoly p = *this;
    return {[p](double x, double y) { return p.value(x, y); },
            [p](double x, double y) { return p.dx(x, y); },
            [p](double x, double y) { return p.dy(x, y); }};
}

ResidualPair cauchy_riemann_residual(const ScalarField2D& u, const ScalarField2D& v, const Point2& p) {
    return {u.dx(p.x, p.t) - v.dt(p.x, p.t), u.dt(p.x, p.t) + v.dx(p.x, p.t)};
}

HarmonicPoly integrate_cauchy_riemann(const HarmonicPoly& v) {
    const int d = v.max_degree();
    const HarmonicPoly lap = v.laplacian();
    const double tol = 1e-12 * std::max(v.scale(), 1.0);
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
            const double c = lap.coeff(i, j);
            if (std::abs(c) > tol) {
                std::ostringstream msg;
                msg << "seed is not harmonic: Laplacian coefficient of x^" << i << " y^" << j
                    << " is " << c;
                throw NotHarmonicError(msg.str(), i, j, c);
            }
        }
    }

    // u_x = v_y fixes every term containing x; u_y = -v_x then fixes the
    // pure-y terms, which come only from the x^1 terms of v.
    HarmonicPoly u(d);
    for (int i = 0; i <= d; ++i) {
        for (int j = 1; i + j <= d; ++j) {
            const double c = v.coeff(i, j);
            if (c != 0.0) {
                u.add(i + 1, j - 1, j * c / (i + 1));
            }
        }
    }
    for (int j = 0; j + 1 <= d; ++j) {
        const double c = v.coeff(1, j);
        if (c != 0.0) {
            u.add(0, j + 1, -c / (j + 1));
        }
    }
    return u;
}

HarmonicPoly LaplaceQuadParams::u_poly() const {
    HarmonicPoly p(2);
    p.set(2, 0, alpha);
    p.set(0, 2, -alpha);
    p.set(1, 0, beta);
    p.set(0, 1, gamma);
    return p;
}

HarmonicPoly LaplaceQuadParams::v_poly() const {
    HarmonicPoly p(2);
    p.set(1, 1, kappa);
    p.set(1, 0, lambda);
    p.set(0, 1, mu);
    return p;
}

LaplaceQuadParams laplace_conjugate_params(double alpha, double beta, double gamma) {
    // Matching coefficients of u_x = v_y and u_y = -v_x:
    //   2 alpha x + beta = kappa x + mu,   -2 alpha y + gamma = -kappa y - lambda.
    return {alpha, beta, gamma, 2.0 * alpha, -gamma, beta};
}

double laplace_pde_residual(const ScalarField2D& u, const Point2& p, double h) {
    if (!(h > 0.0)) {
        throw ParameterError("finite-difference step must be positive");
    }
    const double uxx = (u.dx(p.x + h, p.t) - u.dx(p.x - h, p.t)) / (2.0 * h);
    const double uyy = (u.dt(p.x, p.t + h) - u.dt(p.x, p.t - h)) / (2.0 * h);
    return uxx + uyy;
}

// ---------------------------------------------------------------------------
// Liouville

ScalarField2D liouville_solution(double C) {
    auto gap = [C](double x, double t) {
        const double g = C - (x + t) / kSqrt2;
        if (!(g > 0.0)) {
            std::ostringstream msg;
            msg << "Liouville solution undefined at (x, t) = (" << x << ", " << t
                << "): C - (x + t)/sqrt2 = " << g << " is not positive";
            throw DomainError(msg.str());
        }
        return g;
    };
    auto partial = [gap](double x, double t) { return kSqrt2 / gap(x, t); };
    return {[gap](double x, double t) { return -2.0 * std::log(gap(x, t)); }, partial, partial};
}

ResidualPair liouville_bt_residual(const ScalarField2D& u, const ScalarField2D& v, const Point2& p) {
    const double uu = u(p);
    const double vv = v(p);
    return {u.dx(p.x, p.t) + v.dx(p.x, p.t) - kSqrt2 * std::exp((uu - vv) / 2.0),
            u.dt(p.x, p.t) - v.dt(p.x, p.t) - kSqrt2 * std::exp((uu + vv) / 2.0)};
}

double liouville_pde_residual(const ScalarField2D& u, const Point2& p, double h) {
    return mixed_partial(u, p, h) - std::exp(u(p));
}

double wave_xt_residual(const ScalarField2D& v, const Point2& p, double h) {
    return mixed_partial(v, p, h);
}

// ---------------------------------------------------------------------------
// sine-Gordon

ScalarField2D sine_gordon_kink(double C, double a) {
    require_nonzero_a(a);
    // q / (1 + q^2) written to stay finite when exp overflows.
    auto lorentzian = [](double q) {
        if (std::abs(q) <= 1.0) {
            return q / (1.0 + q * q);
        }
        return 1.0 / (q + 1.0 / q);
    };
    auto q_at = [C, a](double x, double t) { return C * std::exp(a * x + t / a); };
    return {[q_at](double x, double t) { return 4.0 * std::atan(q_at(x, t)); },
            [q_at, a, lorentzian](double x, double t) { return 4.0 * a * lorentzian(q_at(x, t)); },
            [q_at, a, lorentzian](double x, double t) { return 4.0 / a * lorentzian(q_at(x, t)); }};
}

ResidualPair sine_gordon_bt_residual(const ScalarField2D& u, const ScalarField2D& v, double a, const Point2& p) {
    require_nonzero_a(a);
    const double uu = u(p);
    const double vv = v(p);
    return {(u.dx(p.x, p.t) + v.dx(p.x, p.t)) / 2.0 - a * std::sin((uu - vv) / 2.0),
            (u.dt(p.x, p.t) - v.dt(p.x, p.t)) / 2.0 - std::sin((uu + vv) / 2.0) / a};
}

double sine_gordon_pde_residual(const ScalarField2D& u, const Point2& p, double h) {
    return mixed_partial(u, p, h) - std::sin(u(p));
}

}  // namespace backlund::classical
