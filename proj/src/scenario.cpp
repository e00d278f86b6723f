#include "backlund/scenario.hpp"

#include "backlund/classical_bt.hpp"
#include "backlund/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace backlund::cli {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json vec_json(const RealVec3& v) {
    return json::array({v.x, v.y, v.z});
}

json complex_vec_json(const ComplexVec3& v) {
    return {{"re", vec_json(v.real())}, {"im", vec_json(v.imag())}};
}

json medium_json(const Medium& m) {
    return {{"eps", m.eps}, {"mu", m.mu}, {"sigma", m.sigma}};
}

Check tolerance_check(std::string name, double value, double tolerance, std::string note = {}) {
    Check c;
    c.name = std::move(name);
    c.max = value;
    c.rms = value;
    c.tolerance = tolerance;
    c.pass = value <= tolerance;
    c.note = std::move(note);
    return c;
}

Check convergence_check(const ConvergenceReport& report) {
    Check c;
    c.name = "convergence:" + report.label;
    c.max = report.residual.empty() ? 0.0 : report.residual.back();
    c.rms = c.max;
    c.tolerance = kOrderTolerance;
    c.target = kOrderTarget;
    c.pass = report.order_within(kOrderTarget, kOrderTolerance);
    if (report.exact) {
        c.note = "exact";
    } else {
        c.slope = report.slope;
    }
    return c;
}

// Nominal (unfaulted) parameters of a field scenario.
struct WaveSetup {
    ComplexVec3 E0;
    RealVec3 direction;
    double k = 0.0;
    double s = 0.0;
    double phi = 0.0;
    cplx b_factor;
    std::optional<ConductorDispersion> dispersion;
};

WaveSetup wave_setup(const RunConfig& cfg) {
    cfg.medium.validate();
    detail::require_positive_omega(cfg.omega);
    WaveSetup w;
    w.direction = normalized(cfg.khat);
    w.E0 = amplitude(cfg);
    if (cfg.scenario == Scenario::Vacuum) {
        w.k = vacuum_wavenumber(cfg.omega, cfg.medium);
        w.b_factor = 1.0 / cfg.medium.speed();
    } else if (cfg.scenario == Scenario::Conductor) {
        const ConductorDispersion d = solve_dispersion(cfg.omega, cfg.medium);
        w.k = d.k;
        w.s = d.s;
        w.phi = d.phi;
        w.b_factor = d.complex_wavenumber() / cfg.omega;
        w.dispersion = d;
    } else {
        throw ParameterError("scenario " + std::string(scenario_name(cfg.scenario)) + " has no field pair");
    }
    return w;
}

json dispersion_json(const ConductorDispersion& d) {
    const DispersionResiduals res = dispersion_residuals(d.k, d.s, d.omega, d.medium);
    return {{"k", d.k},
            {"s", d.s},
            {"phi", d.phi},
            {"omega", d.omega},
            {"residual_real", res.real_part},
            {"residual_imag", res.imag_part}};
}

json field_inputs(const RunConfig& cfg, const WaveSetup& w) {
    json faults = json::array();
    for (const auto& f : cfg.faults) {
        faults.push_back(f.to_string());
    }
    return {{"medium", medium_json(cfg.medium)},
            {"omega", cfg.omega},
            {"E0", complex_vec_json(w.E0)},
            {"alpha", cfg.alpha},
            {"khat", vec_json(w.direction)},
            {"project", cfg.project},
            {"grid", io::grid_to_json(sampling_grid(cfg))},
            {"levels", cfg.levels},
            {"break_pair", faults}};
}

void add_amplitude_checks(ReportBundle& bundle, const RunConfig& cfg, const WaveSetup& w, const EMFieldPair& pair) {
    const ComplexVec3 E0 = pair.E({}, 0.0);
    const ComplexVec3 B0 = pair.B({}, 0.0);
    static const char* names[] = {"amplitude:k.E0", "amplitude:k.B0", "amplitude:curl-E", "amplitude:curl-B"};
    if (cfg.scenario == Scenario::Vacuum) {
        const AmplitudeCheck a = amplitude_relations_check(E0, B0, w.k * w.direction, cfg.omega, cfg.medium);
        for (std::size_t i = 0; i < 4; ++i) {
            bundle.checks.push_back(tolerance_check(names[i], a.residuals[i], kAlgebraicTolerance * a.scale));
        }
        Check red = tolerance_check("amplitude:redundancy", a.fourth_from_first, kAlgebraicTolerance * a.scale,
                                    "curl-B relation recomputed from the curl-E relation");
        red.pass = a.redundant;
        bundle.checks.push_back(red);
    } else {
        const ConductorAmplitudeCheck a =
            conductor_amplitude_check(E0, B0, w.direction, *w.dispersion, cfg.omega, cfg.medium);
        for (std::size_t i = 0; i < 4; ++i) {
            bundle.checks.push_back(tolerance_check(names[i], a.residuals[i], kAlgebraicTolerance * a.scale));
        }
        bundle.checks.push_back(tolerance_check("amplitude:square-identity", a.square_identity, kAlgebraicTolerance,
                                                "(k+is)^2 against eps mu omega^2 + i mu sigma omega"));
        Check red = tolerance_check("amplitude:redundancy", a.fourth_from_first, kAlgebraicTolerance * a.scale,
                                    "curl-B relation recomputed from the curl-E relation");
        red.pass = a.redundant;
        bundle.checks.push_back(red);
    }
}

std::optional<EMFieldPair> real_pair_for(const RunConfig& cfg, const WaveSetup& w) {
    try {
        decompose_linear(w.E0);
    } catch (const PolarizationError&) {
        return std::nullopt;
    }
    if (cfg.scenario == Scenario::Vacuum) {
        return real_fields_vacuum({w.E0, w.direction, cfg.omega, cfg.alpha}, cfg.medium);
    }
    return real_fields_conductor({w.E0, w.direction, cfg.omega, cfg.alpha, *w.dispersion}, cfg.medium);
}

void add_sample_checks(ReportBundle& bundle, const RunConfig& cfg, const WaveSetup& w,
                       const io::FieldSamples& samples) {
    // |B| = |b_factor| |E| at every node.
    const double ratio = std::abs(w.b_factor);
    double worst = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < samples.E.values.size(); ++i) {
        const double e = norm(samples.E.values[i]);
        const double b = norm(samples.B.values[i]);
        const double ref = ratio * e;
        const double rel = ref > 0.0 ? std::abs(b - ref) / ref : b;
        worst = std::max(worst, rel);
        sumsq += rel * rel;
    }
    Check ratio_check = tolerance_check("ratio:|B|/|E|", worst, kAlgebraicTolerance);
    ratio_check.rms = samples.E.values.empty() ? 0.0 : std::sqrt(sumsq / static_cast<double>(samples.E.values.size()));
    ratio_check.note = "expected ratio " + io::format_double(ratio);
    bundle.checks.push_back(ratio_check);

    // Real part of the complex pair against the directly evaluated real fields.
    const std::optional<EMFieldPair> real_pair = real_pair_for(cfg, w);
    if (!real_pair) {
        bundle.checks.push_back(
            tolerance_check("real-part", 0.0, kAlgebraicTolerance, "skipped: elliptical polarization"));
        return;
    }
    const GridSpec& grid = samples.E.grid;
    double worst_re = 0.0;
    for (std::size_t flat = 0; flat < samples.E.values.size(); ++flat) {
        const NodeIndex node = node_index(grid, flat);
        const RealVec3 r = position(grid, node);
        const double t = grid.coordinate(Axis::T, node[3]);
        const ComplexVec3 er = real_pair->E(r, t);
        const ComplexVec3 br = real_pair->B(r, t);
        const ComplexVec3& ec = samples.E.values[flat];
        const ComplexVec3& bc = samples.B.values[flat];
        const double de = norm(ComplexVec3(ec.real()) - er);
        const double db = norm(ComplexVec3(bc.real()) - br);
        const double se = norm(ec);
        const double sb = norm(bc);
        worst_re = std::max(worst_re, se > 0.0 ? de / se : de);
        worst_re = std::max(worst_re, sb > 0.0 ? db / sb : db);
    }
    bundle.checks.push_back(tolerance_check("real-part", worst_re, kAlgebraicTolerance,
                                            "Re(complex pair) against the real-field formulas"));
}

GridLadder ladder_for(const RunConfig& cfg, const WaveSetup& w) {
    const GridSpec g = sampling_grid(cfg);
    const RealVec3 center = g.origin + 0.5 * g.extent;
    GridLadder ladder = default_ladder(kTwoPi / w.k, kTwoPi / cfg.omega, center, g.t_origin + 0.5 * g.t_extent);
    ladder.levels = cfg.levels;
    return ladder;
}

// ---------------------------------------------------------------------------
// Classical scenarios

std::vector<classical::Point2> box_points(const RunConfig& cfg) {
    if (cfg.box_points < 2) {
        throw ParameterError("box needs at least two points per axis");
    }
    const auto [x0, t0, x1, t1] = cfg.box;
    if (!(x1 > x0) || !(t1 > t0)) {
        throw ParameterError("box must be given as x0,t0,x1,t1 with x1 > x0 and t1 > t0");
    }
    std::vector<classical::Point2> pts;
    const int n = cfg.box_points;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            pts.push_back({x0 + (x1 - x0) * i / (n - 1), t0 + (t1 - t0) * j / (n - 1)});
        }
    }
    return pts;
}

template <typename Fn>
Check bt_check(const std::string& name, const std::vector<classical::Point2>& pts, Fn&& residual) {
    double worst = 0.0;
    double sumsq = 0.0;
    for (const auto& p : pts) {
        const classical::ResidualPair r = residual(p);
        const double m = std::max(std::abs(r.r1), std::abs(r.r2));
        worst = std::max(worst, m);
        sumsq += m * m;
    }
    Check c = tolerance_check(name, worst, kClassicalTolerance);
    c.rms = std::sqrt(sumsq / static_cast<double>(pts.size()));
    return c;
}

// A PDE residual at step h returning {residual, sum of term magnitudes}.
using PdeTerms = std::function<std::pair<double, double>(const classical::Point2&, double)>;

ConvergenceReport pde_convergence(const std::string& label, const std::vector<classical::Point2>& pts,
                                  const RunConfig& cfg, const PdeTerms& terms) {
    std::vector<double> hs, residual, floors;
    for (int level = 0; level < cfg.levels; ++level) {
        const double h = cfg.fd_h0 / std::pow(2.0, level);
        double worst = 0.0;
        double scale = 0.0;
        for (const auto& p : pts) {
            const auto [r, s] = terms(p, h);
            worst = std::max(worst, std::abs(r));
            scale = std::max(scale, s);
        }
        hs.push_back(h);
        residual.push_back(worst);
        floors.push_back(kRoundingFloor * std::max(scale, 1.0));
    }
    return fit_convergence(label, hs, residual, floors);
}

double mixed(const classical::ScalarField2D& u, const classical::Point2& p, double h) {
    return (u.dt(p.x + h, p.t) - u.dt(p.x - h, p.t)) / (2.0 * h);
}

PdeTerms liouville_terms(const classical::ScalarField2D& u) {
    return [u](const classical::Point2& p, double h) {
        const double m = mixed(u, p, h);
        const double rhs = std::exp(u(p));
        return std::pair{classical::liouville_pde_residual(u, p, h), std::abs(m) + rhs};
    };
}

PdeTerms sine_gordon_terms(const classical::ScalarField2D& u) {
    return [u](const classical::Point2& p, double h) {
        const double m = mixed(u, p, h);
        return std::pair{classical::sine_gordon_pde_residual(u, p, h), std::abs(m) + std::abs(std::sin(u(p)))};
    };
}

PdeTerms mixed_terms(const classical::ScalarField2D& v) {
    return [v](const classical::Point2& p, double h) {
        const double m = classical::wave_xt_residual(v, p, h);
        return std::pair{m, std::abs(m)};
    };
}

PdeTerms laplace_terms(const classical::ScalarField2D& u) {
    return [u](const classical::Point2& p, double h) {
        const double uxx = (u.dx(p.x + h, p.t) - u.dx(p.x - h, p.t)) / (2.0 * h);
        const double uyy = (u.dt(p.x, p.t + h) - u.dt(p.x, p.t - h)) / (2.0 * h);
        return std::pair{classical::laplace_pde_residual(u, p, h), std::abs(uxx) + std::abs(uyy)};
    };
}

void add_convergence(ReportBundle& bundle, ConvergenceReport report) {
    bundle.checks.push_back(convergence_check(report));
    bundle.convergence.push_back(std::move(report));
}

ReportBundle run_classical(const RunConfig& cfg) {
    using namespace classical;
    if (!cfg.faults.empty()) {
        throw ParameterError("--break-pair applies only to the vacuum and conductor scenarios");
    }
    ReportBundle bundle;
    bundle.scenario = std::string(scenario_name(cfg.scenario));
    bundle.dispersion = nullptr;
    bundle.inputs = {{"box", cfg.box}, {"box_points", cfg.box_points}, {"fd_h0", cfg.fd_h0}, {"levels", cfg.levels}};
    const std::vector<Point2> pts = box_points(cfg);

    switch (cfg.scenario) {
        case Scenario::CauchyRiemann: {
            bundle.inputs["abc"] = cfg.laplace_abc;
            HarmonicPoly seed;
            seed.set(1, 1, 1.0);
            const ScalarField2D v = seed.to_field();
            const ScalarField2D u = integrate_cauchy_riemann(seed).to_field();
            bundle.checks.push_back(bt_check("bt-residual:seed-xy", pts,
                                             [&](const Point2& p) { return cauchy_riemann_residual(u, v, p); }));
            add_convergence(bundle, pde_convergence("pde-u:laplace", pts, cfg, laplace_terms(u)));
            add_convergence(bundle, pde_convergence("pde-v:laplace", pts, cfg, laplace_terms(v)));

            const auto [al, be, ga] = cfg.laplace_abc;
            const LaplaceQuadParams q = laplace_conjugate_params(al, be, ga);
            const ScalarField2D qu = q.u_poly().to_field();
            const ScalarField2D qv = q.v_poly().to_field();
            Check fam = bt_check("bt-residual:quadratic-family", pts,
                                 [&](const Point2& p) { return cauchy_riemann_residual(qu, qv, p); });
            fam.note = "kappa=" + io::format_double(q.kappa) + " lambda=" + io::format_double(q.lambda) +
                       " mu=" + io::format_double(q.mu);
            bundle.checks.push_back(fam);
            break;
        }
        case Scenario::Liouville: {
            bundle.inputs["C"] = cfg.C;
            const ScalarField2D u = liouville_solution(cfg.C);
            const ScalarField2D v = zero_field();
            bundle.checks.push_back(
                bt_check("bt-residual", pts, [&](const Point2& p) { return liouville_bt_residual(u, v, p); }));
            add_convergence(bundle, pde_convergence("pde-u:liouville", pts, cfg, liouville_terms(u)));
            add_convergence(bundle, pde_convergence("pde-v:v_xt", pts, cfg, mixed_terms(v)));
            break;
        }
        case Scenario::SineGordon: {
            bundle.inputs["C"] = cfg.C;
            bundle.inputs["a"] = cfg.a;
            const ScalarField2D u = sine_gordon_kink(cfg.C, cfg.a);
            const ScalarField2D v = zero_field();
            bundle.checks.push_back(bt_check(
                "bt-residual", pts, [&](const Point2& p) { return sine_gordon_bt_residual(u, v, cfg.a, p); }));
            add_convergence(bundle, pde_convergence("pde-u:sine-gordon", pts, cfg, sine_gordon_terms(u)));
            add_convergence(bundle, pde_convergence("pde-v:sine-gordon", pts, cfg, sine_gordon_terms(v)));
            break;
        }
        default:
            break;
    }
    return bundle;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Vacuum: return "vacuum";
        case Scenario::Conductor: return "conductor";
        case Scenario::CauchyRiemann: return "cauchy-riemann";
        case Scenario::Liouville: return "liouville";
        case Scenario::SineGordon: return "sine-gordon";
    }
    return "?";
}

Scenario parse_scenario(std::string_view name) {
    for (Scenario s : {Scenario::Vacuum, Scenario::Conductor, Scenario::CauchyRiemann, Scenario::Liouville,
                       Scenario::SineGordon}) {
        if (scenario_name(s) == name) {
            return s;
        }
    }
    throw ParameterError("unknown scenario '" + std::string(name) +
                         "' (expected vacuum, conductor, cauchy-riemann, liouville or sine-gordon)");
}

bool is_field_scenario(Scenario s) {
    return s == Scenario::Vacuum || s == Scenario::Conductor;
}

Fault Fault::parse(std::string_view text) {
    auto factor_of = [&](std::string_view rest) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
        if (ec != std::errc() || ptr != rest.data() + rest.size() || !std::isfinite(v)) {
            throw ParameterError("bad fault factor in '" + std::string(text) + "'");
        }
        return v;
    };
    if (text == "zero-s") {
        return {Kind::ZeroS, 0.0};
    }
    if (text.starts_with("scale-B:")) {
        return {Kind::ScaleB, factor_of(text.substr(8))};
    }
    if (text.starts_with("k-scale:")) {
        return {Kind::ScaleK, factor_of(text.substr(8))};
    }
    throw ParameterError("unknown fault '" + std::string(text) + "' (expected scale-B:<f>, k-scale:<f> or zero-s)");
}

std::string Fault::to_string() const {
    switch (kind) {
        case Kind::ScaleB: return "scale-B:" + io::format_double(factor);
        case Kind::ScaleK: return "k-scale:" + io::format_double(factor);
        case Kind::ZeroS: return "zero-s";
    }
    return "?";
}

bool ReportBundle::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

nlohmann::json ReportBundle::to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks) {
        json j = {{"name", c.name}, {"max", c.max}, {"rms", c.rms}, {"tolerance", c.tolerance}, {"pass", c.pass}};
        if (c.slope) {
            j["slope"] = *c.slope;
        }
        if (c.target) {
            j["target"] = *c.target;
        }
        if (!c.note.empty()) {
            j["note"] = c.note;
        }
        checks_json.push_back(std::move(j));
    }
    json out = {{"scenario", scenario},
                {"inputs", inputs},
                {"dispersion", dispersion},
                {"checks", checks_json},
                {"verdict", pass() ? "pass" : "fail"}};
    if (residuals) {
        out["residuals"] = io::to_json(*residuals);
    }
    if (!convergence.empty()) {
        json conv = json::array();
        for (const auto& c : convergence) {
            conv.push_back(io::to_json(c));
        }
        out["convergence"] = conv;
    }
    return out;
}

EMFieldPair scale_b(const EMFieldPair& pair, double factor) {
    EMFieldPair out = pair;
    out.B = [B = pair.B, factor](const RealVec3& r, double t) { return factor * B(r, t); };
    out.provenance.kind += "+scale-B";
    out.provenance.b_factor *= factor;
    return out;
}

ComplexVec3 amplitude(const RunConfig& cfg) {
    ComplexVec3 E0 = std::polar(1.0, cfg.alpha) * (ComplexVec3(cfg.E0_re) + cplx(0.0, 1.0) * ComplexVec3(cfg.E0_im));
    if (cfg.project) {
        E0 = project_transverse(E0, normalized(cfg.khat));
    }
    return E0;
}

GridSpec sampling_grid(const RunConfig& cfg) {
    double k = 0.0;
    if (cfg.scenario == Scenario::Vacuum) {
        k = vacuum_wavenumber(cfg.omega, cfg.medium);
    } else if (cfg.scenario == Scenario::Conductor) {
        k = solve_dispersion(cfg.omega, cfg.medium).k;
    } else {
        throw ParameterError("scenario has no space-time grid");
    }
    const double wavelength = kTwoPi / k;
    GridSpec g;
    g.origin = cfg.origin;
    g.extent = cfg.extent.value_or(RealVec3{wavelength, wavelength, wavelength});
    g.points = cfg.points;
    g.t_origin = cfg.t_origin;
    g.t_extent = cfg.t_extent.value_or(kTwoPi / cfg.omega);
    g.t_points = cfg.t_points;
    g.validate();
    return g;
}

EMFieldPair build_pair(const RunConfig& cfg) {
    const WaveSetup w = wave_setup(cfg);
    EMFieldPair pair = cfg.scenario == Scenario::Vacuum
                           ? make_conjugate_vacuum({w.E0, w.direction, cfg.omega, cfg.alpha}, cfg.medium)
                           : make_conjugate_conductor({w.E0, w.direction, cfg.omega, cfg.alpha, *w.dispersion},
                                                      cfg.medium);

    double k = w.k;
    double s = w.s;
    cplx b_factor = w.b_factor;
    bool rebuild = false;
    for (const Fault& f : cfg.faults) {
        if (f.kind == Fault::Kind::ScaleK) {
            k *= f.factor;
            rebuild = true;
        } else if (f.kind == Fault::Kind::ZeroS) {
            if (cfg.scenario != Scenario::Conductor || !cfg.medium.conducting()) {
                throw ParameterError("fault zero-s needs the conductor scenario with sigma > 0");
            }
            s = 0.0;
            b_factor = cplx(k / cfg.omega);
            rebuild = true;
        }
    }
    if (rebuild) {
        PairProvenance prov = pair.provenance;
        prov.kind += "+faulted";
        pair = detail::plane_wave_pair(w.E0, w.direction, k, s, cfg.omega, b_factor, prov);
    }
    for (const Fault& f : cfg.faults) {
        if (f.kind == Fault::Kind::ScaleB) {
            pair = scale_b(pair, f.factor);
        }
    }
    return pair;
}

ReportBundle run_dispersion(double omega, const Medium& medium) {
    const ConductorDispersion d = solve_dispersion(omega, medium);
    const DispersionResiduals res = dispersion_residuals(d.k, d.s, omega, medium);
    ReportBundle bundle;
    bundle.scenario = "dispersion";
    bundle.inputs = {{"omega", omega}, {"medium", medium_json(medium)}};
    bundle.dispersion = dispersion_json(d);
    bundle.checks.push_back(tolerance_check("dispersion-real", res.real_part, kAlgebraicTolerance,
                                            "s^2 - k^2 + eps mu omega^2, relative"));
    bundle.checks.push_back(tolerance_check("dispersion-imag", res.imag_part, kAlgebraicTolerance,
                                            "mu sigma omega - 2 s k, relative"));
    return bundle;
}

ConjugateOutput run_conjugate(const RunConfig& cfg) {
    if (!is_field_scenario(cfg.scenario)) {
        throw ParameterError("conjugate supports the vacuum and conductor scenarios only");
    }
    const WaveSetup w = wave_setup(cfg);
    const EMFieldPair pair = build_pair(cfg);
    const GridSpec grid = sampling_grid(cfg);

    ConjugateOutput out;
    ReportBundle& bundle = out.report;
    bundle.scenario = std::string(scenario_name(cfg.scenario));
    bundle.inputs = field_inputs(cfg, w);
    if (w.dispersion) {
        bundle.dispersion = dispersion_json(*w.dispersion);
        const DispersionResiduals res = dispersion_residuals(w.k, w.s, cfg.omega, cfg.medium);
        bundle.checks.push_back(tolerance_check("dispersion-real", res.real_part, kAlgebraicTolerance));
        bundle.checks.push_back(tolerance_check("dispersion-imag", res.imag_part, kAlgebraicTolerance));
    } else {
        bundle.dispersion = {{"k", w.k}, {"s", 0.0}, {"phi", 0.0}, {"omega", cfg.omega}, {"c", cfg.medium.speed()}};
    }

    add_amplitude_checks(bundle, cfg, w, pair);
    out.samples = {sample(pair.E, grid), sample(pair.B, grid)};
    add_sample_checks(bundle, cfg, w, out.samples);
    bundle.residuals = full_residual(out.samples.E, out.samples.B, cfg.medium);
    return out;
}

double measure_phase_lag(const EMFieldPair& real_pair, const RealVec3& r, double omega, int samples_per_period) {
    const double period = kTwoPi / omega;
    const int n = 2 * samples_per_period;
    const double dt = 2.0 * period / n;

    std::vector<ComplexVec3> e(n + 1), b(n + 1);
    for (int i = 0; i <= n; ++i) {
        e[i] = real_pair.E(r, i * dt);
        b[i] = real_pair.B(r, i * dt);
    }
    auto strongest = [](const std::vector<ComplexVec3>& f) {
        std::array<double, 3> peak{};
        for (const auto& v : f) {
            for (std::size_t c = 0; c < 3; ++c) {
                peak[c] = std::max(peak[c], std::abs(v[c].real()));
            }
        }
        return static_cast<std::size_t>(std::max_element(peak.begin(), peak.end()) - peak.begin());
    };
    const std::size_t ce = strongest(e);
    const std::size_t cb = strongest(b);

    // First sign change of component c at or after time t_from, linearly interpolated.
    auto crossing = [&](const std::vector<ComplexVec3>& f, std::size_t c, double t_from) {
        const int start = std::max(0, static_cast<int>(std::floor(t_from / dt)));
        for (int i = start; i < n; ++i) {
            const double f0 = f[i][c].real();
            const double f1 = f[i + 1][c].real();
            if (f0 == 0.0 && i * dt >= t_from) {
                return i * dt;
            }
            if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
                const double t = i * dt + dt * f0 / (f0 - f1);
                if (t >= t_from) {
                    return t;
                }
            }
        }
        throw Error("no zero crossing found while measuring the phase lag");
    };
    const double t_e = crossing(e, ce, 0.5 * period);
    const double t_b = crossing(b, cb, t_e - 0.25 * period);
    return t_b - t_e;
}

ReportBundle run_verify(const RunConfig& cfg) {
    if (!is_field_scenario(cfg.scenario)) {
        return run_classical(cfg);
    }
    ReportBundle bundle = run_conjugate(cfg).report;
    const WaveSetup w = wave_setup(cfg);
    const EMFieldPair pair = build_pair(cfg);

    for (ConvergenceReport& report : convergence_suite(pair, cfg.medium, ladder_for(cfg, w))) {
        add_convergence(bundle, std::move(report));
    }

    if (const auto real_pair = real_pair_for(cfg, w)) {
        const double expected = w.phi / cfg.omega;
        const double measured = measure_phase_lag(*real_pair, {}, cfg.omega);
        Check lag = tolerance_check("phase-lag", std::abs(measured - expected), kPhaseTolerance,
                                    "measured " + io::format_double(measured) + ", expected phi/omega = " +
                                        io::format_double(expected));
        bundle.checks.push_back(lag);
    }
    return bundle;
}

void write_classical_csv(std::ostream& os, const RunConfig& cfg) {
    using namespace classical;
    ScalarField2D u;
    ScalarField2D v;
    std::function<ResidualPair(const Point2&)> residual;
    switch (cfg.scenario) {
        case Scenario::CauchyRiemann: {
            const auto [al, be, ga] = cfg.laplace_abc;
            const LaplaceQuadParams q = laplace_conjugate_params(al, be, ga);
            u = q.u_poly().to_field();
            v = q.v_poly().to_field();
            residual = [&](const Point2& p) { return cauchy_riemann_residual(u, v, p); };
            break;
        }
        case Scenario::Liouville:
            u = liouville_solution(cfg.C);
            v = zero_field();
            residual = [&](const Point2& p) { return liouville_bt_residual(u, v, p); };
            break;
        case Scenario::SineGordon:
            u = sine_gordon_kink(cfg.C, cfg.a);
            v = zero_field();
            residual = [&](const Point2& p) { return sine_gordon_bt_residual(u, v, cfg.a, p); };
            break;
        default:
            throw ParameterError("write_classical_csv needs a classical scenario");
    }
    os << "x,t,u,v,r1,r2\n";
    for (const Point2& p : box_points(cfg)) {
        const ResidualPair r = residual(p);
        os << io::format_double(p.x) << ',' << io::format_double(p.t) << ',' << io::format_double(u(p)) << ','
           << io::format_double(v(p)) << ',' << io::format_double(r.r1) << ',' << io::format_double(r.r2) << '\n';
    }
}

}  // namespace backlund::cli
