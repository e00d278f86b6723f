#pragma once

// Residual evaluators for the Cauchy-Riemann, Liouville and sine-Gordon
// Backlund transformations, closed-form generated solutions, and the
// Laplace polynomial families used to build conjugate pairs.
//
// All two-variable fields are written u(x, t). For the Cauchy-Riemann /
// Laplace case the second variable plays the role of y.

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace backlund::classical {

struct Point2 {
    double x = 0.0;
    double t = 0.0;
};

/// A scalar field of two variables together with its exact first partials.
struct ScalarField2D {
    std::function<double(double, double)> value;
    std::function<double(double, double)> dx;
    std::function<double(double, double)> dt;

    double operator()(const Point2& p) const { return value(p.x, p.t); }
};

/// Left-minus-right residual pair of a two-equation system.
struct ResidualPair {
    double r1 = 0.0;
    double r2 = 0.0;
};

inline constexpr double kDefaultMixedStep = 1e-4;

ScalarField2D zero_field();
ScalarField2D constant_field(double c);

// ---------------------------------------------------------------------------
// Laplace / Cauchy-Riemann
// ---------------------------------------------------------------------------

/// Bivariate polynomial sum c[i][j] x^i y^j with total degree <= max_degree.
/// Used for harmonic seeds and their Cauchy-Riemann conjugates.
class HarmonicPoly {
public:
    static constexpr int kDefaultMaxDegree = 8;

    explicit HarmonicPoly(int max_degree = kDefaultMaxDegree);

    int max_degree() const { return max_degree_; }

    /// Coefficient of x^i y^j. Setting a term above max_degree throws ParameterError.
    double coeff(int i, int j) const;
    void set(int i, int j, double c);
    HarmonicPoly& add(int i, int j, double c);

    double value(double x, double y) const;
    double dx(double x, double y) const;
    double dy(double x, double y) const;

    /// Coefficients of the Laplacian (degree reduced by two).
    HarmonicPoly laplacian() const;

    /// Largest coefficient magnitude (used as the scale for harmonic checks).
    double scale() const;

    ScalarField2D to_field() const;

private:
    std::size_t slot(int i, int j) const;

    int max_degree_;
    std::vector<double> c_;
};

/// r1 = u_x - v_y, r2 = u_y + v_x from the analytic partials.
ResidualPair cauchy_riemann_residual(const ScalarField2D& u, const ScalarField2D& v, const Point2& p);

/// Returns u with u_x = v_y and u_y = -v_x, constant term zero.
/// Throws NotHarmonicError naming the first Laplacian coefficient whose
/// magnitude exceeds 1e-12 times the coefficient scale of v.
HarmonicPoly integrate_cauchy_riemann(const HarmonicPoly& v);

/// u = alpha (x^2 - y^2) + beta x + gamma y,  v = kappa x y + lambda x + mu y.
struct LaplaceQuadParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double kappa = 0.0;
    double lambda = 0.0;
    double mu = 0.0;

    HarmonicPoly u_poly() const;
    HarmonicPoly v_poly() const;
};

/// Chooses (kappa, lambda, mu) so that the quadratic pair is Cauchy-Riemann conjugate.
LaplaceQuadParams laplace_conjugate_params(double alpha, double beta, double gamma);

/// u_xx + u_yy with the second partials obtained by central-differencing
/// the analytic first partials with step h.
double laplace_pde_residual(const ScalarField2D& u, const Point2& p, double h = kDefaultMixedStep);

// ---------------------------------------------------------------------------
// Liouville
// ---------------------------------------------------------------------------

/// u = -2 ln(C - (x + t)/sqrt 2). Evaluating at or beyond the singular line
/// C - (x + t)/sqrt 2 <= 0 throws DomainError.
ScalarField2D liouville_solution(double C);

/// r1 = u_x + v_x - sqrt2 e^{(u - v)/2},  r2 = u_t - v_t - sqrt2 e^{(u + v)/2}.
ResidualPair liouville_bt_residual(const ScalarField2D& u, const ScalarField2D& v, const Point2& p);

/// u_xt - e^u, mixed partial from central-differencing u_t in x.
double liouville_pde_residual(const ScalarField2D& u, const Point2& p, double h = kDefaultMixedStep);

/// v_xt, the linear partner equation of the Liouville transformation.
double wave_xt_residual(const ScalarField2D& v, const Point2& p, double h = kDefaultMixedStep);

// ---------------------------------------------------------------------------
// sine-Gordon
// ---------------------------------------------------------------------------

/// u = 4 arctan(C exp(a x + t/a)). Throws ParameterError for a == 0.
ScalarField2D sine_gordon_kink(double C, double a);

/// r1 = (u + v)_x / 2 - a sin((u - v)/2),  r2 = (u - v)_t / 2 - sin((u + v)/2) / a.
ResidualPair sine_gordon_bt_residual(const ScalarField2D& u, const ScalarField2D& v, double a, const Point2& p);

/// u_xt - sin u, mixed partial from central-differencing u_t in x.
double sine_gordon_pde_residual(const ScalarField2D& u, const Point2& p, double h = kDefaultMixedStep);

}  // namespace backlund::classical
