#pragma once

// Orchestration behind the command-line tool: builds pairs from a RunConfig,
// injects faults, runs the checks and collects a ReportBundle.

#include "backlund/maxwell_conductor.hpp"
#include "backlund/maxwell_vacuum.hpp"
#include "backlund/report_io.hpp"
#include "backlund/residual_checker.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace backlund::cli {

enum class Scenario { Vacuum, Conductor, CauchyRiemann, Liouville, SineGordon };

std::string_view scenario_name(Scenario s);
/// Throws ParameterError for an unknown name.
Scenario parse_scenario(std::string_view name);
bool is_field_scenario(Scenario s);

/// Deliberate corruption of a conjugate pair.
struct Fault {
    enum class Kind { ScaleB, ScaleK, ZeroS };
    Kind kind = Kind::ScaleB;
    double factor = 1.0;

    /// "scale-B:<f>", "k-scale:<f>" or "zero-s". Throws ParameterError.
    static Fault parse(std::string_view text);
    std::string to_string() const;
};

struct RunConfig {
    Scenario scenario = Scenario::Vacuum;

    // Medium and wave.
    Medium medium;
    double omega = 1.0;
    RealVec3 E0_re{1.0, 0.0, 0.0};
    RealVec3 E0_im{};
    double alpha = 0.0;
    RealVec3 khat{0.0, 0.0, 1.0};  ///< normalized before use
    bool project = false;

    // Sampling grid; unset extents default to one wavelength / one period.
    RealVec3 origin{};
    std::optional<RealVec3> extent;
    std::array<int, 3> points{9, 9, 9};
    double t_origin = 0.0;
    std::optional<double> t_extent;
    int t_points = 9;
    int levels = 4;

    // Classical transformations.
    double C = 1.0;
    double a = 1.0;
    std::array<double, 4> box{-1.0, -1.0, 1.0, 1.0};  ///< x0, t0, x1, t1
    int box_points = 11;
    double fd_h0 = 1e-2;
    std::array<double, 3> laplace_abc{1.0, 0.0, 0.0};

    std::vector<Fault> faults;
};

/// One pass/fail item of a report.
struct Check {
    std::string name;
    double max = 0.0;
    double rms = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::optional<double> slope;
    std::optional<double> target;
    std::string note;
};

struct ReportBundle {
    std::string scenario;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json dispersion;  ///< null when not applicable
    std::vector<Check> checks;
    std::optional<ResidualReport> residuals;
    std::vector<ConvergenceReport> convergence;

    /// "pass" iff every check passed.
    bool pass() const;
    nlohmann::json to_json() const;
};

/// Wraps a field pair whose B is multiplied by `factor`.
EMFieldPair scale_b(const EMFieldPair& pair, double factor);

/// Complex E0 = (E0_re + i E0_im) e^{i alpha}, projected when cfg.project.
ComplexVec3 amplitude(const RunConfig& cfg);

/// Grid used for sampling and single-grid residual reports.
GridSpec sampling_grid(const RunConfig& cfg);

/// Conjugate pair for a vacuum or conductor config, with faults applied.
EMFieldPair build_pair(const RunConfig& cfg);

ReportBundle run_dispersion(double omega, const Medium& medium);

struct ConjugateOutput {
    ReportBundle report;
    io::FieldSamples samples;
};

/// Builds, samples and checks a field pair (vacuum or conductor).
ConjugateOutput run_conjugate(const RunConfig& cfg);

/// Full residual and convergence suite for any scenario.
ReportBundle run_verify(const RunConfig& cfg);

/// Writes x,t,u,v,r1,r2 over the sample box of a classical scenario.
void write_classical_csv(std::ostream& os, const RunConfig& cfg);

/// Slope band applied to every convergence check.
inline constexpr double kOrderTarget = 2.0;
inline constexpr double kOrderTolerance = 0.1;
/// Bound on the classical transformation residuals with analytic partials.
inline constexpr double kClassicalTolerance = 1e-10;
/// Bound on |measured - phi/omega| for the E-B phase lag.
inline constexpr double kPhaseTolerance = 1e-6;

/// Time between an E zero crossing and the following B zero crossing at
/// r, reduced to [-T/4, T/4). Zero crossings are located by linear
/// interpolation on `samples_per_period` samples per period.
double measure_phase_lag(const EMFieldPair& real_pair, const RealVec3& r, double omega,
                         int samples_per_period = 20000);

}  // namespace backlund::cli
