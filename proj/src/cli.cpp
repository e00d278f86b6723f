#include "backlund/cli.hpp"

#include "backlund/errors.hpp"
#include "backlund/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace backlund::cli {

namespace {

const std::set<std::string> kSubcommands = {"dispersion", "conjugate", "verify"};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != cell.size()) {
            throw ParameterError("--" + flag + ": cannot parse '" + cell + "' as a number");
        }
        out.push_back(v);
    }
    if (out.size() != expected) {
        std::ostringstream msg;
        msg << "--" << flag << " expects " << expected << " comma-separated numbers, got '" << text << "'";
        throw ParameterError(msg.str());
    }
    return out;
}

RealVec3 parse_vec3(const std::string& text, const std::string& flag) {
    const auto v = parse_list(text, 3, flag);
    return {v[0], v[1], v[2]};
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string option_key(const std::string& token) {
    if (!token.starts_with("--")) {
        return {};
    }
    return token.substr(2, token.find('=') == std::string::npos ? std::string::npos : token.find('=') - 2);
}

// Splices `key=value` lines of the config file into the argument list right
// after the subcommand, skipping keys the command line sets itself.
std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw ParameterError("--config needs a file path");
            }
            config_path = args[++i];
        } else if (args[i].starts_with("--config=")) {
            config_path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (config_path.empty()) {
        return rest;
    }

    std::ifstream in(config_path);
    if (!in) {
        throw ParameterError("cannot open config file '" + config_path + "'");
    }
    const auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return kSubcommands.count(a); });
    if (sub == rest.end()) {
        throw ParameterError("--config given without a subcommand");
    }
    std::set<std::string> given;
    for (const auto& a : rest) {
        if (const std::string key = option_key(a); !key.empty()) {
            given.insert(key);
        }
    }

    std::vector<std::string> injected;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << config_path << ":" << line_no << ": expected key=value";
            throw ParameterError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream msg;
            msg << config_path << ":" << line_no << ": empty key";
            throw ParameterError(msg.str());
        }
        if (!given.count(key)) {
            injected.push_back("--" + key + "=" + value);
        }
    }
    const auto pos = std::distance(rest.begin(), sub) + 1;
    rest.insert(rest.begin() + pos, injected.begin(), injected.end());
    return rest;
}

// Raw option values; converted to a RunConfig after parsing.
struct RawOptions {
    std::string scenario = "vacuum";
    double omega = 1.0;
    double eps = 1.0;
    double mu = 1.0;
    double sigma = 0.0;
    std::string E0 = "1,0,0";
    std::string E0_im = "0,0,0";
    double alpha = 0.0;
    std::string khat = "0,0,1";
    bool project = false;
    std::string origin = "0,0,0";
    std::string extent;
    std::string points = "9";
    double t0 = 0.0;
    std::optional<double> t_extent;
    int t_points = 9;
    int levels = 4;
    double C = 1.0;
    double a = 1.0;
    std::string box = "-1,-1,1,1";
    int box_points = 11;
    double fd_h0 = 1e-2;
    std::string abc = "1,0,0";
    std::vector<std::string> faults;

    std::string json_path;
    std::string csv_path;
    bool quiet = false;
};

void add_output_options(CLI::App* app, RawOptions& o) {
    app->add_option("--json", o.json_path, "Write the JSON report to this path");
    app->add_option("--csv", o.csv_path, "Write samples as CSV to this path");
    app->add_flag("--quiet", o.quiet, "Suppress the printed summary");
}

void add_medium_options(CLI::App* app, RawOptions& o) {
    app->add_option("--omega", o.omega, "Angular frequency (> 0)");
    app->add_option("--eps", o.eps, "Permittivity (> 0)");
    app->add_option("--mu", o.mu, "Permeability (> 0)");
    app->add_option("--sigma", o.sigma, "Conductivity (>= 0)");
}

void add_run_options(CLI::App* app, RawOptions& o) {
    app->add_option("--scenario", o.scenario, "vacuum | conductor | cauchy-riemann | liouville | sine-gordon");
    add_medium_options(app, o);
    app->add_option("--E0", o.E0, "Real part of the amplitude, x,y,z");
    app->add_option("--E0-im", o.E0_im, "Imaginary part of the amplitude, x,y,z");
    app->add_option("--alpha", o.alpha, "Overall amplitude phase (radian)");
    app->add_option("--khat", o.khat, "Propagation direction, x,y,z (normalized)");
    app->add_flag("--project", o.project, "Project E0 onto the plane transverse to khat");
    app->add_option("--origin", o.origin, "Grid origin x,y,z");
    app->add_option("--extent", o.extent, "Grid extent x,y,z (default: one wavelength)");
    app->add_option("--points", o.points, "Points per spatial axis: n or nx,ny,nz");
    app->add_option("--t0", o.t0, "Time origin");
    app->add_option("--t-extent", o.t_extent, "Time extent (default: one period)");
    app->add_option("--t-points", o.t_points, "Time points");
    app->add_option("--levels", o.levels, "Grids in convergence runs, each half the spacing of the last (>= 3)");
    app->add_option("--C", o.C, "Integration constant of the classical solutions");
    app->add_option("--a", o.a, "sine-Gordon transformation parameter (nonzero)");
    app->add_option("--box", o.box, "Classical sample box x0,t0,x1,t1");
    app->add_option("--box-points", o.box_points, "Classical sample points per axis");
    app->add_option("--fd-h0", o.fd_h0, "Coarsest step of the classical convergence runs");
    app->add_option("--abc", o.abc, "alpha,beta,gamma of the quadratic Laplace family");
    app->add_option("--break-pair", o.faults, "Inject a fault: scale-B:<f>, k-scale:<f>, zero-s");
    add_output_options(app, o);
}

RunConfig to_config(const RawOptions& o) {
    RunConfig cfg;
    cfg.scenario = parse_scenario(o.scenario);
    cfg.medium = Medium::make(o.eps, o.mu, o.sigma);
    cfg.omega = o.omega;
    cfg.E0_re = parse_vec3(o.E0, "E0");
    cfg.E0_im = parse_vec3(o.E0_im, "E0-im");
    cfg.alpha = o.alpha;
    cfg.khat = normalized(parse_vec3(o.khat, "khat"));
    cfg.project = o.project;
    cfg.origin = parse_vec3(o.origin, "origin");
    if (!o.extent.empty()) {
        cfg.extent = parse_vec3(o.extent, "extent");
    }
    if (o.points.find(',') == std::string::npos) {
        const int n = static_cast<int>(parse_list(o.points, 1, "points")[0]);
        cfg.points = {n, n, n};
    } else {
        const auto p = parse_list(o.points, 3, "points");
        cfg.points = {static_cast<int>(p[0]), static_cast<int>(p[1]), static_cast<int>(p[2])};
    }
    cfg.t_origin = o.t0;
    cfg.t_extent = o.t_extent;
    cfg.t_points = o.t_points;
    if (o.levels < 3) {
        throw ParameterError("--levels must be at least 3");
    }
    cfg.levels = o.levels;
    cfg.C = o.C;
    cfg.a = o.a;
    const auto box = parse_list(o.box, 4, "box");
    cfg.box = {box[0], box[1], box[2], box[3]};
    cfg.box_points = o.box_points;
    if (!(o.fd_h0 > 0.0)) {
        throw ParameterError("--fd-h0 must be positive");
    }
    cfg.fd_h0 = o.fd_h0;
    const auto abc = parse_list(o.abc, 3, "abc");
    cfg.laplace_abc = {abc[0], abc[1], abc[2]};
    for (const auto& f : o.faults) {
        cfg.faults.push_back(Fault::parse(f));
    }
    return cfg;
}

std::string short_double(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

void print_summary(std::ostream& out, const ReportBundle& bundle) {
    out << "scenario: " << bundle.scenario << '\n';
    if (bundle.dispersion.is_object()) {
        for (const char* key : {"k", "s", "phi"}) {
            if (bundle.dispersion.contains(key)) {
                out << "  " << key << " = " << io::format_double(bundle.dispersion[key].get<double>()) << '\n';
            }
        }
    }
    for (const auto& c : bundle.checks) {
        out << (c.pass ? "  PASS  " : "  FAIL  ") << std::left << std::setw(32) << c.name;
        if (c.target) {
            out << (c.slope ? " slope=" + short_double(*c.slope) : std::string(" exact"));
            out << " finest=" << short_double(c.max);
        } else {
            out << " value=" << short_double(c.max) << " tol=" << short_double(c.tolerance);
        }
        if (!c.note.empty()) {
            out << "  (" << c.note << ")";
        }
        out << '\n';
    }
    out << "verdict: " << (bundle.pass() ? "pass" : "fail") << '\n';
}

void write_json(const std::string& path, const ReportBundle& bundle) {
    if (path.empty()) {
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw ParameterError("cannot write JSON report to '" + path + "'");
    }
    f << bundle.to_json().dump(2) << '\n';
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream f(path);
    if (!f) {
        throw ParameterError("cannot write CSV to '" + path + "'");
    }
    return f;
}

int finish(const ReportBundle& bundle, const RawOptions& o, std::ostream& out) {
    write_json(o.json_path, bundle);
    if (!o.quiet) {
        print_summary(out, bundle);
    }
    return bundle.pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct and verify Backlund-conjugate solution pairs", "backlund"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RawOptions disp_opts;
    auto* dispersion = app.add_subcommand("dispersion", "Solve the conductor dispersion system for (k, s, phi)");
    add_medium_options(dispersion, disp_opts);
    add_output_options(dispersion, disp_opts);

    RawOptions conj_opts;
    auto* conjugate = app.add_subcommand("conjugate", "Build a conjugate E/B pair, sample it and check it");
    add_run_options(conjugate, conj_opts);

    RawOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "Run the residual and convergence suite for a scenario");
    add_run_options(verify, verify_opts);

    try {
        std::vector<std::string> argv = merge_config(args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (dispersion->parsed()) {
            const RawOptions& o = disp_opts;
            const ReportBundle bundle = run_dispersion(o.omega, Medium::make(o.eps, o.mu, o.sigma));
            if (!o.csv_path.empty()) {
                auto f = open_csv(o.csv_path);
                const auto& d = bundle.dispersion;
                f << "omega,eps,mu,sigma,k,s,phi,residual_real,residual_imag\n";
                f << io::format_double(o.omega) << ',' << io::format_double(o.eps) << ','
                  << io::format_double(o.mu) << ',' << io::format_double(o.sigma);
                for (const char* key : {"k", "s", "phi", "residual_real", "residual_imag"}) {
                    f << ',' << io::format_double(d[key].get<double>());
                }
                f << '\n';
            }
            return finish(bundle, o, out);
        }

        const bool is_verify = verify->parsed();
        const RawOptions& o = is_verify ? verify_opts : conj_opts;
        const RunConfig cfg = to_config(o);

        if (!is_verify) {
            const ConjugateOutput result = run_conjugate(cfg);
            if (!o.csv_path.empty()) {
                auto f = open_csv(o.csv_path);
                io::write_field_csv(f, result.samples.E, result.samples.B);
            }
            return finish(result.report, o, out);
        }

        const ReportBundle bundle = run_verify(cfg);
        if (!o.csv_path.empty()) {
            auto f = open_csv(o.csv_path);
            if (is_field_scenario(cfg.scenario)) {
                const ConjugateOutput samples = run_conjugate(cfg);
                io::write_field_csv(f, samples.samples.E, samples.samples.B);
            } else {
                write_classical_csv(f, cfg);
            }
        }
        return finish(bundle, o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace backlund::cli
