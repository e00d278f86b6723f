#pragma once

// Test-only generators and independent oracles. Nothing here is linked into
// the library; the oracles deliberately take different routes from the
// production code.

#include "backlund/medium.hpp"
#include "backlund/vectors_grid.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace testing {

using backlund::ComplexVec3;
using backlund::cplx;
using backlund::RealVec3;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    /// Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

    RealVec3 vec(double lo = -1.0, double hi = 1.0) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    ComplexVec3 cvec(double lo = -1.0, double hi = 1.0) {
        return {cplx(uniform(lo, hi), uniform(lo, hi)), cplx(uniform(lo, hi), uniform(lo, hi)),
                cplx(uniform(lo, hi), uniform(lo, hi))};
    }

    RealVec3 unit() {
        for (;;) {
            const RealVec3 v = vec();
            const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
            if (n > 0.1 && n <= 1.0) {
                return (1.0 / n) * v;
            }
        }
    }

    /// Complex amplitude with no component along `khat`, built without the
    /// library's projection helper.
    ComplexVec3 transverse(const RealVec3& khat) {
        // Two real vectors spanning the plane orthogonal to khat.
        const RealVec3 seed = std::abs(khat.x) < 0.9 ? RealVec3{1, 0, 0} : RealVec3{0, 1, 0};
        RealVec3 e1{khat.y * seed.z - khat.z * seed.y, khat.z * seed.x - khat.x * seed.z,
                    khat.x * seed.y - khat.y * seed.x};
        const double n1 = std::sqrt(e1.x * e1.x + e1.y * e1.y + e1.z * e1.z);
        e1 = (1.0 / n1) * e1;
        const RealVec3 e2{khat.y * e1.z - khat.z * e1.y, khat.z * e1.x - khat.x * e1.z, khat.x * e1.y - khat.y * e1.x};
        const cplx a(uniform(-1, 1), uniform(-1, 1));
        const cplx b(uniform(-1, 1), uniform(-1, 1));
        return a * ComplexVec3(e1) + b * ComplexVec3(e2);
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// CODATA 2018 vacuum permittivity and permeability (SI).
inline constexpr double kEps0 = 8.8541878128e-12;
inline constexpr double kMu0 = 1.25663706212e-6;
inline constexpr double kSpeedOfLight = 299792458.0;

/// Newton iteration on the dispersion system
///   F1 = s^2 - k^2 + eps mu omega^2 = 0,  F2 = mu sigma omega - 2 s k = 0
/// in units where k is scaled by omega sqrt(eps mu). Independent of the
/// closed-form root used by the library.
inline std::pair<double, double> newton_dispersion(double omega, const backlund::Medium& m) {
    const double k0 = omega * std::sqrt(m.eps * m.mu);
    const double q = m.sigma / (m.eps * omega);  // F2 / k0^2 in scaled units is q - 2 S K
    // Start above both asymptotes so the iteration stays on the k > 0, s >= 0 branch.
    double K = std::max(1.0, std::sqrt(q / 2.0)) * 1.5;
    double S = q / (2.0 * K);
    for (int it = 0; it < 200; ++it) {
        const double f1 = S * S - K * K + 1.0;
        const double f2 = q - 2.0 * S * K;
        // Jacobian [[-2K, 2S], [-2S, -2K]].
        const double det = 4.0 * (K * K + S * S);
        const double dK = (-2.0 * K * (-f1) - 2.0 * S * (-f2)) / det;
        const double dS = (2.0 * S * (-f1) - 2.0 * K * (-f2)) / det;
        K += dK;
        S += dS;
        if (std::abs(dK) <= 1e-17 * std::abs(K) && std::abs(dS) <= 1e-17 * std::max(std::abs(S), 1e-300)) {
            break;
        }
    }
    return {K * k0, S * k0};
}

/// Analytic mixed partial of u = -2 ln(C - (x+t)/sqrt 2).
inline double liouville_uxt(double C, double x, double t) {
    const double w = C - (x + t) / std::sqrt(2.0);
    return 1.0 / (w * w);
}

/// Analytic mixed partial of u = 4 atan(C exp(a x + t/a)).
inline double sine_gordon_uxt(double C, double a, double x, double t) {
    const double q = C * std::exp(a * x + t / a);
    const double d = 1.0 + q * q;
    return 4.0 * q * (1.0 - q * q) / (d * d);
}

/// Relative distance |a - b| / max(|b|, floor).
inline double rel(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max(std::abs(b), floor);
}

inline double vec_dist(const ComplexVec3& a, const ComplexVec3& b) {
    return std::sqrt(std::norm(a.x - b.x) + std::norm(a.y - b.y) + std::norm(a.z - b.z));
}

}  // namespace testing
