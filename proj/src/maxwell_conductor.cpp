#include "backlund/maxwell_conductor.hpp"

#include "backlund/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace backlund {

namespace {

void require_consistent(const AttenuatedWaveSpec& spec, const Medium& medium) {
    const ConductorDispersion& d = spec.dispersion;
    if (!(d.k > 0.0) || !(d.s >= 0.0)) {
        std::ostringstream msg;
        msg << "dispersion must be on the decaying branch k > 0, s >= 0 (k = " << d.k << ", s = " << d.s << ")";
        throw DispersionMismatchError(msg.str(), 0.0, 0.0);
    }
    const DispersionResiduals res = dispersion_residuals(d.k, d.s, spec.omega, medium);
    if (res.real_part > kAlgebraicTolerance || res.imag_part > kAlgebraicTolerance) {
        std::ostringstream msg;
        msg << "(k, s) = (" << d.k << ", " << d.s << ") does not solve the dispersion system for omega = "
            << spec.omega << ": relative residuals " << res.real_part << ", " << res.imag_part;
        throw DispersionMismatchError(msg.str(), res.real_part, res.imag_part);
    }
}

}  // namespace

DispersionResiduals dispersion_residuals(double k, double s, double omega, const Medium& medium) {
    const double em_w2 = medium.eps * medium.mu * omega * omega;
    const double ms_w = medium.mu * medium.sigma * omega;
    const double scale_re = std::max({s * s, k * k, em_w2});
    const double scale_im = std::max(std::abs(ms_w), std::abs(2.0 * s * k));
    DispersionResiduals out;
    const double re = s * s - k * k + em_w2;
    const double im = ms_w - 2.0 * s * k;
    out.real_part = scale_re > 0.0 ? std::abs(re) / scale_re : std::abs(re);
    out.imag_part = scale_im > 0.0 ? std::abs(im) / scale_im : std::abs(im);
    return out;
}

ConductorDispersion solve_dispersion(double omega, const Medium& medium) {
    medium.validate();
    detail::require_positive_omega(omega);
    const double loss = medium.sigma / (medium.eps * omega);
    // sigma = 0 reproduces vacuum_wavenumber exactly.
    const double k = loss == 0.0
                         ? omega * std::sqrt(medium.eps * medium.mu)
                         : omega * std::sqrt(medium.eps * medium.mu / 2.0) * std::sqrt(1.0 + std::hypot(1.0, loss));
    const double s = medium.mu * medium.sigma * omega / (2.0 * k);
    return {k, s, std::atan2(s, k), omega, medium};
}

AttenuatedWaveSpec attenuated_spec(const ComplexVec3& E0, const RealVec3& tau, double omega, const Medium& medium) {
    const LinearPolarization lp = [&] {
        try {
            return decompose_linear(E0);
        } catch (const PolarizationError&) {
            return LinearPolarization{};
        }
    }();
    return {E0, tau, omega, lp.phase, solve_dispersion(omega, medium)};
}

EMFieldPair make_conjugate_conductor(const AttenuatedWaveSpec& spec, const Medium& medium) {
    medium.validate();
    detail::require_positive_omega(spec.omega);
    detail::require_unit(spec.tau, "tau");
    detail::require_transverse(spec.E0, spec.tau);
    require_consistent(spec, medium);
    const ConductorDispersion& d = spec.dispersion;
    return detail::plane_wave_pair(spec.E0, spec.tau, d.k, d.s, spec.omega, d.complex_wavenumber() / spec.omega,
                                   PairProvenance{"conductor", medium, {}, {}, 0.0, 0.0, 0.0, {}});
}

bool ConductorAmplitudeCheck::passed(double rel_tol) const {
    return std::all_of(residuals.begin(), residuals.end(), [&](double r) { return r <= rel_tol * scale; });
}

ConductorAmplitudeCheck conductor_amplitude_check(const ComplexVec3& E0, const ComplexVec3& B0, const RealVec3& tau,
                                                  const ConductorDispersion& dispersion, double omega,
                                                  const Medium& medium) {
    const cplx kc = dispersion.complex_wavenumber();
    const cplx ohmic(medium.eps * medium.mu * omega, medium.mu * medium.sigma);
    const RealVec3 kvec = dispersion.k * tau;

    ConductorAmplitudeCheck out;
    out.residuals[0] = std::abs(dot(kvec, E0));
    out.residuals[1] = std::abs(dot(kvec, B0));
    out.residuals[2] = norm(kc * cross(tau, E0) - omega * B0);
    out.residuals[3] = norm(kc * cross(tau, B0) + ohmic * E0);
    out.scale = std::max({std::abs(kc) * norm(E0), omega * norm(B0), std::abs(kc) * norm(B0),
                          std::abs(ohmic) * norm(E0)});

    const cplx target = omega * ohmic;
    out.square_identity = std::abs(kc * kc - target) / std::abs(target);
    if (omega != 0.0) {
        const ComplexVec3 B0_from_first = (kc / omega) * cross(tau, E0);
        out.fourth_from_first = norm(kc * cross(tau, B0_from_first) + ohmic * E0);
    }
    out.redundant = out.fourth_from_first <= kAlgebraicTolerance * out.scale &&
                    out.square_identity <= kAlgebraicTolerance;
    return out;
}

EMFieldPair real_fields_conductor(const AttenuatedWaveSpec& spec, const Medium& medium) {
    medium.validate();
    detail::require_positive_omega(spec.omega);
    detail::require_unit(spec.tau, "tau");
    detail::require_transverse(spec.E0, spec.tau);
    require_consistent(spec, medium);
    const LinearPolarization lp = decompose_linear(spec.E0);

    const ConductorDispersion& d = spec.dispersion;
    const RealVec3 tau = spec.tau;
    const RealVec3 E0R = lp.amplitude;
    const RealVec3 B0R = (std::hypot(d.k, d.s) / spec.omega) * cross(tau, E0R);
    const double k = d.k;
    const double s = d.s;
    const double phi = d.phi;
    const double omega = spec.omega;
    const double alpha = lp.phase;

    return {[=](const RealVec3& r, double t) {
                const double along = dot(tau, r);
                return ComplexVec3(std::exp(-s * along) * std::cos(k * along - omega * t + alpha) * E0R);
            },
            [=](const RealVec3& r, double t) {
                const double along = dot(tau, r);
                return ComplexVec3(std::exp(-s * along) * std::cos(k * along - omega * t + alpha + phi) * B0R);
            },
            PairProvenance{"conductor-real", medium, spec.E0, tau, omega, k, s, d.complex_wavenumber() / omega}};
}

}  // namespace backlund
