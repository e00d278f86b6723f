#include "backlund/maxwell_vacuum.hpp"

#include "backlund/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace backlund {

namespace detail {

void require_unit(const RealVec3& v, const char* name) {
    const double n = norm(v);
    if (!(std::abs(n - 1.0) <= kAlgebraicTolerance)) {
        std::ostringstream msg;
        msg << name << " must be a unit vector (|" << name << "| = " << n << ")";
        throw ParameterError(msg.str());
    }
}

void require_transverse(const ComplexVec3& E0, const RealVec3& direction) {
    const double longitudinal = std::abs(dot(direction, E0));
    if (longitudinal > kAlgebraicTolerance * norm(E0)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "transversality violated: |khat . E0| = " << longitudinal << " (|E0| = " << norm(E0)
            << "); use project_transverse to remove the longitudinal part";
        throw TransversalityError(msg.str(), longitudinal);
    }
}

void require_positive_omega(double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        std::ostringstream msg;
        msg << "angular frequency must be positive (omega = " << omega << ")";
        throw ParameterError(msg.str());
    }
}

EMFieldPair plane_wave_pair(const ComplexVec3& E0, const RealVec3& direction, double k, double s, double omega,
                            cplx b_factor, PairProvenance provenance) {
    const ComplexVec3 B0 = b_factor * cross(direction, E0);
    auto phase = [direction, k, s, omega](const RealVec3& r, double t) {
        const double along = dot(direction, r);
        return std::exp(cplx(-s * along, k * along - omega * t));
    };
    provenance.E0 = E0;
    provenance.direction = direction;
    provenance.omega = omega;
    provenance.k = k;
    provenance.s = s;
    provenance.b_factor = b_factor;
    return {[E0, phase](const RealVec3& r, double t) { return phase(r, t) * E0; },
            [B0, phase](const RealVec3& r, double t) { return phase(r, t) * B0; },
            std::move(provenance)};
}

}  // namespace detail

PlaneWaveSpec PlaneWaveSpec::linearly_polarized(const RealVec3& E0R, double alpha, const RealVec3& khat,
                                                double omega) {
    return {std::polar(1.0, alpha) * ComplexVec3(E0R), khat, omega, alpha};
}

bool AmplitudeCheck::passed(double rel_tol) const {
    return std::all_of(residuals.begin(), residuals.end(), [&](double r) { return r <= rel_tol * scale; });
}

double vacuum_wavenumber(double omega, const Medium& medium) {
    medium.validate();
    if (medium.conducting()) {
        throw WrongMediumError("medium has nonzero conductivity; use the conductor dispersion solver");
    }
    detail::require_positive_omega(omega);
    return omega * std::sqrt(medium.eps * medium.mu);
}

EMFieldPair make_conjugate_vacuum(const PlaneWaveSpec& spec, const Medium& medium) {
    const double k = vacuum_wavenumber(spec.omega, medium);
    detail::require_unit(spec.khat, "khat");
    detail::require_transverse(spec.E0, spec.khat);
    const double inv_c = 1.0 / medium.speed();
    return detail::plane_wave_pair(spec.E0, spec.khat, k, 0.0, spec.omega, cplx(inv_c),
                                   PairProvenance{"vacuum", medium, {}, {}, 0.0, 0.0, 0.0, {}});
}

ComplexVec3 project_transverse(const ComplexVec3& E0, const RealVec3& khat) {
    return E0 - dot(khat, E0) * ComplexVec3(khat);
}

LinearPolarization decompose_linear(const ComplexVec3& E0) {
    std::size_t largest = 0;
    for (std::size_t c = 1; c < 3; ++c) {
        if (std::abs(E0[c]) > std::abs(E0[largest])) {
            largest = c;
        }
    }
    const double alpha = std::abs(E0[largest]) > 0.0 ? std::arg(E0[largest]) : 0.0;
    const ComplexVec3 rotated = std::polar(1.0, -alpha) * E0;
    const double stray = norm(rotated.imag());
    if (stray > kAlgebraicTolerance * norm(E0)) {
        std::ostringstream msg;
        msg << "amplitude is not linearly polarized (out-of-phase part " << stray << " of |E0| = " << norm(E0)
            << "); only linear polarization has a real-form representation";
        throw PolarizationError(msg.str());
    }
    return {rotated.real(), alpha};
}

EMFieldPair real_fields_vacuum(const PlaneWaveSpec& spec, const Medium& medium) {
    const double k = vacuum_wavenumber(spec.omega, medium);
    detail::require_unit(spec.khat, "khat");
    detail::require_transverse(spec.E0, spec.khat);
    const LinearPolarization lp = decompose_linear(spec.E0);
    const RealVec3 E0R = lp.amplitude;
    const RealVec3 B0R = (1.0 / medium.speed()) * cross(spec.khat, E0R);
    const RealVec3 khat = spec.khat;
    const double omega = spec.omega;
    const double alpha = lp.phase;
    auto wave = [khat, k, omega, alpha](const RealVec3& r, double t) {
        return std::cos(k * dot(khat, r) - omega * t + alpha);
    };
    return {[E0R, wave](const RealVec3& r, double t) { return ComplexVec3(wave(r, t) * E0R); },
            [B0R, wave](const RealVec3& r, double t) { return ComplexVec3(wave(r, t) * B0R); },
            PairProvenance{"vacuum-real", medium, spec.E0, khat, omega, k, 0.0, cplx(1.0 / medium.speed())}};
}

AmplitudeCheck amplitude_relations_check(const ComplexVec3& E0, const ComplexVec3& B0, const RealVec3& kvec,
                                         double omega, const Medium& medium) {
    const double inv_c2 = medium.eps * medium.mu;
    const double kmag = norm(kvec);
    AmplitudeCheck out;
    out.residuals[0] = std::abs(dot(kvec, E0));
    out.residuals[1] = std::abs(dot(kvec, B0));
    out.residuals[2] = norm(cross(kvec, E0) - omega * B0);
    out.residuals[3] = norm(cross(kvec, B0) + (omega * inv_c2) * E0);
    out.scale = std::max({kmag * norm(E0), omega * norm(B0), kmag * norm(B0), omega * inv_c2 * norm(E0)});

    if (omega != 0.0) {
        const ComplexVec3 B0_from_first = (1.0 / omega) * cross(kvec, E0);
        out.fourth_from_first = norm(cross(kvec, B0_from_first) + (omega * inv_c2) * E0);
    }
    out.redundant = out.fourth_from_first <= kAlgebraicTolerance * out.scale;
    return out;
}

}  // namespace backlund
