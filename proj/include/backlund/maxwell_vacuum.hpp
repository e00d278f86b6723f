#pragma once

// Conjugate monochromatic plane-wave solutions of the source-free Maxwell
// system in a non-conducting medium, with the amplitude and transversality
// conditions exposed as checkable predicates.

#include "backlund/medium.hpp"
#include "backlund/vectors_grid.hpp"

#include <array>
#include <string>

namespace backlund {

/// Relative tolerance for algebraic identities (transversality, unit vectors,
/// amplitude relations).
inline constexpr double kAlgebraicTolerance = 1e-12;

/// Monochromatic plane wave E0 exp{i(k khat.r - omega t)}.
struct PlaneWaveSpec {
    ComplexVec3 E0;
    RealVec3 khat{0.0, 0.0, 1.0};
    double omega = 1.0;
    /// Phase of the linearly polarized form E0 = E0R e^{i alpha}. Informational:
    /// real-form constructors recover (E0R, alpha) from E0 itself.
    double alpha = 0.0;

    /// Builds E0 = E0R e^{i alpha}.
    static PlaneWaveSpec linearly_polarized(const RealVec3& E0R, double alpha, const RealVec3& khat, double omega);
};

/// Where a field pair came from. Filled in by every constructor.
struct PairProvenance {
    std::string kind;        ///< "vacuum", "conductor", "vacuum-real", ...
    Medium medium;
    ComplexVec3 E0;
    RealVec3 direction;
    double omega = 0.0;
    double k = 0.0;          ///< wavenumber actually used
    double s = 0.0;          ///< attenuation actually used
    cplx b_factor;           ///< B = b_factor (direction x E) for complex pairs
};

struct EMFieldPair {
    VectorField E;
    VectorField B;
    PairProvenance provenance;
};

/// Amplitude-level residuals of the transversality and curl relations.
struct AmplitudeCheck {
    /// |k.E0|, |k.B0|, |k x E0 - omega B0|, |k x B0 + (omega/c^2) E0|
    std::array<double, 4> residuals{};
    /// Fourth residual recomputed with B0 replaced by (k x E0)/omega.
    double fourth_from_first = 0.0;
    /// Largest term magnitude entering the relations.
    double scale = 0.0;
    /// True when the fourth relation follows from the first curl relation
    /// (fourth_from_first within tolerance).
    bool redundant = false;

    bool passed(double rel_tol = kAlgebraicTolerance) const;
};

/// k = omega sqrt(eps mu). Throws WrongMediumError for a conducting medium
/// and ParameterError for omega <= 0.
double vacuum_wavenumber(double omega, const Medium& medium);

/// E = E0 exp{i(k.r - omega t)}, B = (1/c) khat x E.
/// Throws TransversalityError when |khat.E0| > 1e-12 |E0| and ParameterError
/// when khat is not a unit vector.
EMFieldPair make_conjugate_vacuum(const PlaneWaveSpec& spec, const Medium& medium);

/// E0 - khat (khat.E0)
ComplexVec3 project_transverse(const ComplexVec3& E0, const RealVec3& khat);

struct LinearPolarization {
    RealVec3 amplitude;  ///< E0R
    double phase = 0.0;  ///< alpha
};

/// Writes E0 as E0R e^{i alpha}. Throws PolarizationError when the real and
/// imaginary parts of E0 are not parallel.
LinearPolarization decompose_linear(const ComplexVec3& E0);

/// Real in-phase fields E0R cos(k.r - omega t + alpha) and
/// (1/c)(khat x E0R) cos(k.r - omega t + alpha), evaluated directly.
EMFieldPair real_fields_vacuum(const PlaneWaveSpec& spec, const Medium& medium);

AmplitudeCheck amplitude_relations_check(const ComplexVec3& E0, const ComplexVec3& B0, const RealVec3& kvec,
                                         double omega, const Medium& medium);

namespace detail {

void require_unit(const RealVec3& v, const char* name);
void require_transverse(const ComplexVec3& E0, const RealVec3& direction);
void require_positive_omega(double omega);

/// E = E0 e^{-s d.r} e^{i(k d.r - omega t)},  B = b_factor (d x E).
EMFieldPair plane_wave_pair(const ComplexVec3& E0, const RealVec3& direction, double k, double s, double omega,
                            cplx b_factor, PairProvenance provenance);

}  // namespace detail

}  // namespace backlund
