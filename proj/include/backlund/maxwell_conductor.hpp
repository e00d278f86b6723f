#pragma once

// Attenuated plane waves in a linear conducting medium: the (k, s) dispersion
// system, the conjugate E/B pair, and the real fields with the E-B phase lag.

#include "backlund/maxwell_vacuum.hpp"

namespace backlund {

/// Solution of  s^2 - k^2 + eps mu omega^2 = 0,  mu sigma omega - 2 s k = 0
/// on the decaying branch k > 0, s >= 0.
struct ConductorDispersion {
    double k = 0.0;      ///< wavenumber
    double s = 0.0;      ///< attenuation coefficient
    double phi = 0.0;    ///< arg(k + i s), in [0, pi/4]
    double omega = 0.0;
    Medium medium;

    cplx complex_wavenumber() const { return {k, s}; }
};

/// Relative residuals of the two dispersion equations, each normalized by the
/// largest term magnitude in its equation.
struct DispersionResiduals {
    double real_part = 0.0;  ///< s^2 - k^2 + eps mu omega^2
    double imag_part = 0.0;  ///< mu sigma omega - 2 s k
};

DispersionResiduals dispersion_residuals(double k, double s, double omega, const Medium& medium);

/// Closed-form positive root
///   k = omega sqrt(eps mu / 2) sqrt(1 + sqrt(1 + (sigma/(eps omega))^2)),
///   s = mu sigma omega / (2k),  phi = atan(s/k).
ConductorDispersion solve_dispersion(double omega, const Medium& medium);

struct AttenuatedWaveSpec {
    ComplexVec3 E0;
    RealVec3 tau{0.0, 0.0, 1.0};
    double omega = 1.0;
    double alpha = 0.0;
    ConductorDispersion dispersion;
};

/// Builds a spec with dispersion solved from (omega, medium).
AttenuatedWaveSpec attenuated_spec(const ComplexVec3& E0, const RealVec3& tau, double omega, const Medium& medium);

/// E = E0 e^{-s tau.r} e^{i(k tau.r - omega t)},  B = ((k + i s)/omega) tau x E.
/// Throws TransversalityError, and DispersionMismatchError when the
/// (k, s) do not satisfy the dispersion system for (omega, medium) to 1e-12.
EMFieldPair make_conjugate_conductor(const AttenuatedWaveSpec& spec, const Medium& medium);

struct ConductorAmplitudeCheck {
    /// |k.E0|, |k.B0|, |(k+is) tau x E0 - omega B0|,
    /// |(k+is) tau x B0 + (eps mu omega + i mu sigma) E0|
    std::array<double, 4> residuals{};
    /// Fourth residual recomputed with B0 replaced by (k+is)(tau x E0)/omega.
    double fourth_from_first = 0.0;
    /// |(k+is)^2 - (eps mu omega^2 + i mu sigma omega)| / |eps mu omega^2 + i mu sigma omega|
    double square_identity = 0.0;
    double scale = 0.0;
    bool redundant = false;

    bool passed(double rel_tol = kAlgebraicTolerance) const;
};

ConductorAmplitudeCheck conductor_amplitude_check(const ComplexVec3& E0, const ComplexVec3& B0, const RealVec3& tau,
                                                  const ConductorDispersion& dispersion, double omega,
                                                  const Medium& medium);

/// E = E0R e^{-s tau.r} cos(k tau.r - omega t + alpha)
/// B = (sqrt(k^2+s^2)/omega)(tau x E0R) e^{-s tau.r} cos(k tau.r - omega t + alpha + phi)
EMFieldPair real_fields_conductor(const AttenuatedWaveSpec& spec, const Medium& medium);

}  // namespace backlund
