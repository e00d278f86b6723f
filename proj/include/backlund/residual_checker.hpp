#pragma once

// Finite-difference oracle for Maxwell-system and wave-equation residuals.
// Works from point samples only; never touches analytic derivatives of the
// fields it checks.

#include "backlund/maxwell_vacuum.hpp"
#include "backlund/medium.hpp"
#include "backlund/vectors_grid.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace backlund {

namespace labels {
inline constexpr const char* kDivE = "div-E";
inline constexpr const char* kDivB = "div-B";
inline constexpr const char* kCurlE = "curl-E";
inline constexpr const char* kCurlB = "curl-B";
inline constexpr const char* kWaveE = "wave-E";
inline constexpr const char* kWaveB = "wave-B";
}  // namespace labels

struct EquationResidual {
    std::string label;
    double max = 0.0;
    double rms = 0.0;
    /// Largest sum of term magnitudes over the checked nodes; residuals below
    /// ~1e-10 of this are rounding noise.
    double scale = 0.0;
};

struct ResidualReport {
    std::vector<EquationResidual> equations;
    double h = 0.0;   ///< largest spatial spacing
    double dt = 0.0;  ///< temporal spacing
    std::size_t node_count = 0;

    /// Throws std::out_of_range for an unknown label.
    const EquationResidual& operator[](const std::string& label) const;
};

/// div-E, div-B, curl-E (curl E + dB/dt) and curl-B
/// (curl B - mu sigma E - eps mu dE/dt) over nodes one step inside every
/// boundary. sigma = 0 gives the non-conducting system.
ResidualReport maxwell_residual(const SampledField& E, const SampledField& B, const Medium& medium);
ResidualReport maxwell_residual(const EMFieldPair& pair, const Medium& medium, const GridSpec& grid);

/// |lap F - eps mu F_tt - mu sigma F_t| over nodes two steps inside every boundary.
ResidualReport wave_residual(const SampledField& field, const Medium& medium, const std::string& label);
ResidualReport wave_residual(const VectorField& field, const Medium& medium, const GridSpec& grid,
                             const std::string& label);

/// Maxwell and both wave residuals of a pair in one report.
ResidualReport full_residual(const SampledField& E, const SampledField& B, const Medium& medium);
ResidualReport full_residual(const EMFieldPair& pair, const Medium& medium, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Convergence order

struct ConvergenceReport {
    std::string label;
    std::vector<double> h;
    std::vector<double> residual;
    /// Least-squares slope of log(residual) against log(h); NaN when exact.
    double slope = 0.0;
    /// RMS deviation of the log-log points from the fitted line.
    double fit_residual = 0.0;
    /// Every residual was zero (or under its rounding floor).
    bool exact = false;
    /// Residuals did not decrease strictly as h was halved.
    bool non_monotone = false;

    /// exact, or |slope - target| <= tolerance.
    bool order_within(double target, double tolerance) const;
};

/// Fits the convergence order of precomputed residuals. h must hold at least
/// three values, each half of the previous. Residuals at or below the matching
/// entry of `floors` (if given) count as zero.
ConvergenceReport fit_convergence(const std::string& label, std::span<const double> h,
                                  std::span<const double> residual, std::span<const double> floors = {});

/// Evaluates `check` at every spacing and fits the order.
ConvergenceReport convergence_order(const std::function<double(double)>& check, std::span<const double> h,
                                    double floor = 0.0, const std::string& label = "residual");

/// Relative rounding floor used to declare a finite-difference residual exact.
inline constexpr double kRoundingFloor = 1e-10;

/// Sequence of 9^4 grids centred on a fixed space-time point, spacing halved
/// at every level.
struct GridLadder {
    RealVec3 center{};
    double t_center = 0.0;
    double h0 = 0.1;
    double dt0 = 0.1;
    int points = 9;
    int levels = 4;

    GridSpec grid(int level) const;
    std::vector<double> spacings() const;
};

/// h0 = wavelength / 20 and dt0 = period / 40. The temporal step is kept off
/// the light-crossing ratio: with dt = h/c an axis-aligned vacuum wave makes
/// the space and time truncation errors cancel exactly.
GridLadder default_ladder(double wavelength, double period, const RealVec3& center, double t_center);

/// Full residual report per ladder level, then one ConvergenceReport per
/// equation label (max residual over nodes against h). Each node's residual
/// is multiplied by |F(center)| / |F(node)|, F being the differenced field, so
/// an attenuating envelope does not leak into the fitted slope as the grids
/// shrink. Plane waves without attenuation get unit weights.
std::vector<ConvergenceReport> convergence_suite(const EMFieldPair& pair, const Medium& medium,
                                                 const GridLadder& ladder);

// ---------------------------------------------------------------------------
// Discrete vector-calculus operators (interior nodes only)

struct SampledScalar {
    GridSpec grid;
    std::vector<cplx> values;
};

/// Central-difference curl on the grid shrunk by one node on each spatial side.
SampledField discrete_curl(const SampledField& field);
/// Central-difference divergence on the grid shrunk by one node on each spatial side.
SampledScalar discrete_divergence(const SampledField& field);

}  // namespace backlund
