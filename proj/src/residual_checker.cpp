#include "backlund/residual_checker.hpp"

#include "backlund/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace backlund {

namespace {

constexpr Axis kSpaceAxes[] = {Axis::X, Axis::Y, Axis::Z};

class Accumulator {
public:
    explicit Accumulator(std::string label) : label_(std::move(label)) {}

    void add(double residual, double scale) {
        max_ = std::max(max_, residual);
        sumsq_ += residual * residual;
        scale_ = std::max(scale_, scale);
        ++count_;
    }

    EquationResidual finish() const {
        const double rms = count_ > 0 ? std::sqrt(sumsq_ / static_cast<double>(count_)) : 0.0;
        return {label_, max_, std::min(rms, max_), scale_};
    }

private:
    std::string label_;
    double max_ = 0.0;
    double sumsq_ = 0.0;
    double scale_ = 0.0;
    std::size_t count_ = 0;
};

ComplexVec3 curl_at(const SampledField& f, const NodeIndex& node) {
    const ComplexVec3 dx = central_diff(f, Axis::X, 1, node);
    const ComplexVec3 dy = central_diff(f, Axis::Y, 1, node);
    const ComplexVec3 dz = central_diff(f, Axis::Z, 1, node);
    return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
}

struct Divergence {
    cplx value;
    double terms;  // sum of |d_a F_a|
};

Divergence divergence_at(const SampledField& f, const NodeIndex& node) {
    Divergence d{0.0, 0.0};
    for (Axis axis : kSpaceAxes) {
        const cplx term = central_diff(f, axis, 1, node)[static_cast<std::size_t>(axis)];
        d.value += term;
        d.terms += std::abs(term);
    }
    return d;
}

void require_interior(const GridSpec& grid, int shell) {
    grid.validate();
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z, Axis::T}) {
        if (grid.count(axis) < 2 * shell + 1) {
            std::ostringstream msg;
            msg << "grid axis " << axis_name(axis) << " has no interior nodes; need at least " << 2 * shell + 1
                << " points";
            throw GridError(msg.str());
        }
    }
}

double max_spacing(const GridSpec& grid) {
    return std::max({grid.spacing(Axis::X), grid.spacing(Axis::Y), grid.spacing(Axis::Z)});
}

template <typename Fn>
std::size_t for_each_interior(const GridSpec& grid, int shell, Fn&& fn) {
    std::size_t visited = 0;
    const std::size_t n = grid.node_count();
    for (std::size_t flat = 0; flat < n; ++flat) {
        const NodeIndex node = node_index(grid, flat);
        if (is_interior(grid, node, shell)) {
            fn(node);
            ++visited;
        }
    }
    return visited;
}

GridSpec shrunk(const GridSpec& grid) {
    GridSpec out = grid;
    for (Axis axis : kSpaceAxes) {
        const auto a = static_cast<std::size_t>(axis);
        const double h = grid.spacing(axis);
        out.origin[a] = grid.origin[a] + h;
        out.points[a] = grid.points[a] - 2;
        out.extent[a] = h * static_cast<double>(out.points[a] - 1);
    }
    return out;
}

// Per-node multipliers applied to residuals and their scales; empty means 1.
using Weights = std::vector<double>;

double weight(const Weights& w, std::size_t flat) {
    return w.empty() ? 1.0 : w[flat];
}

// |F(reference)| / |F(node)| at every node, 1 where the field vanishes.
Weights envelope_weights(const SampledField& f, const ComplexVec3& reference) {
    const double ref = norm(reference);
    Weights w(f.values.size(), 1.0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double local = norm(f.values[i]);
        if (local > 0.0 && ref > 0.0) {
            w[i] = ref / local;
        }
    }
    return w;
}

ResidualReport maxwell_weighted(const SampledField& E, const SampledField& B, const Medium& medium, const Weights& we,
                                const Weights& wb) {
    medium.validate();
    if (!(E.grid == B.grid)) {
        throw GridError("E and B must be sampled on the same grid");
    }
    const GridSpec& grid = E.grid;
    require_interior(grid, 1);

    const double em = medium.eps * medium.mu;
    const double ms = medium.mu * medium.sigma;
    Accumulator div_e(labels::kDivE), div_b(labels::kDivB), curl_e(labels::kCurlE), curl_b(labels::kCurlB);

    const std::size_t visited = for_each_interior(grid, 1, [&](const NodeIndex& node) {
        const Divergence de = divergence_at(E, node);
        const Divergence db = divergence_at(B, node);
        const std::size_t flat = flat_index(grid, node);
        const double ke = weight(we, flat);
        const double kb = weight(wb, flat);
        div_e.add(ke * std::abs(de.value), ke * de.terms);
        div_b.add(kb * std::abs(db.value), kb * db.terms);

        const ComplexVec3 rot_e = curl_at(E, node);
        const ComplexVec3 rot_b = curl_at(B, node);
        const ComplexVec3 e_t = central_diff(E, Axis::T, 1, node);
        const ComplexVec3 b_t = central_diff(B, Axis::T, 1, node);
        const ComplexVec3& e = E.at(node);

        curl_e.add(ke * norm(rot_e + b_t), ke * (norm(rot_e) + norm(b_t)));
        curl_b.add(kb * norm(rot_b - ms * e - em * e_t), kb * (norm(rot_b) + ms * norm(e) + em * norm(e_t)));
    });

    return {{div_e.finish(), div_b.finish(), curl_e.finish(), curl_b.finish()},
            max_spacing(grid),
            grid.spacing(Axis::T),
            visited};
}

ResidualReport wave_weighted(const SampledField& field, const Medium& medium, const std::string& label,
                             const Weights& w) {
    medium.validate();
    const GridSpec& grid = field.grid;
    require_interior(grid, 2);

    const double em = medium.eps * medium.mu;
    const double ms = medium.mu * medium.sigma;
    Accumulator acc(label);
    const std::size_t visited = for_each_interior(grid, 2, [&](const NodeIndex& node) {
        ComplexVec3 lap;
        double lap_terms = 0.0;
        for (Axis axis : kSpaceAxes) {
            const ComplexVec3 d2 = central_diff(field, axis, 2, node);
            lap += d2;
            lap_terms += norm(d2);
        }
        const ComplexVec3 f_tt = central_diff(field, Axis::T, 2, node);
        const ComplexVec3 f_t = central_diff(field, Axis::T, 1, node);
        const double k = weight(w, flat_index(grid, node));
        acc.add(k * norm(lap - em * f_tt - ms * f_t), k * (lap_terms + em * norm(f_tt) + ms * norm(f_t)));
    });
    return {{acc.finish()}, max_spacing(grid), grid.spacing(Axis::T), visited};
}

}  // namespace

const EquationResidual& ResidualReport::operator[](const std::string& label) const {
    for (const auto& eq : equations) {
        if (eq.label == label) {
            return eq;
        }
    }
    throw std::out_of_range("no residual labelled '" + label + "'");
}

ResidualReport maxwell_residual(const SampledField& E, const SampledField& B, const Medium& medium) {
    return maxwell_weighted(E, B, medium, {}, {});
}

ResidualReport maxwell_residual(const EMFieldPair& pair, const Medium& medium, const GridSpec& grid) {
    return maxwell_residual(sample(pair.E, grid), sample(pair.B, grid), medium);
}

ResidualReport wave_residual(const SampledField& field, const Medium& medium, const std::string& label) {
    return wave_weighted(field, medium, label, {});
}

ResidualReport wave_residual(const VectorField& field, const Medium& medium, const GridSpec& grid,
                             const std::string& label) {
    return wave_residual(sample(field, grid), medium, label);
}

ResidualReport full_residual(const SampledField& E, const SampledField& B, const Medium& medium) {
    ResidualReport report = maxwell_residual(E, B, medium);
    report.equations.push_back(wave_residual(E, medium, labels::kWaveE).equations.front());
    report.equations.push_back(wave_residual(B, medium, labels::kWaveB).equations.front());
    return report;
}

ResidualReport full_residual(const EMFieldPair& pair, const Medium& medium, const GridSpec& grid) {
    return full_residual(sample(pair.E, grid), sample(pair.B, grid), medium);
}

// ---------------------------------------------------------------------------

bool ConvergenceReport::order_within(double target, double tolerance) const {
    return exact || std::abs(slope - target) <= tolerance;
}

ConvergenceReport fit_convergence(const std::string& label, std::span<const double> h,
                                  std::span<const double> residual, std::span<const double> floors) {
    if (h.size() != residual.size() || (!floors.empty() && floors.size() != h.size())) {
        throw ParameterError("convergence fit needs one residual (and floor) per spacing");
    }
    if (h.size() < 3) {
        throw ParameterError("convergence fit needs at least three spacings");
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) {
            throw ParameterError("spacings must be positive");
        }
        if (i > 0 && std::abs(h[i] / h[i - 1] - 0.5) > 1e-9) {
            std::ostringstream msg;
            msg << "spacing " << h[i] << " is not half of the previous spacing " << h[i - 1];
            throw ParameterError(msg.str());
        }
    }

    ConvergenceReport out;
    out.label = label;
    out.h.assign(h.begin(), h.end());
    out.residual.assign(residual.begin(), residual.end());

    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double floor = floors.empty() ? 0.0 : floors[i];
        if (residual[i] > floor) {
            lx.push_back(std::log(h[i]));
            ly.push_back(std::log(residual[i]));
        }
    }
    for (std::size_t i = 1; i < residual.size(); ++i) {
        if (!(residual[i] < residual[i - 1])) {
            const double floor = floors.empty() ? 0.0 : floors[i];
            if (residual[i] > floor || residual[i - 1] > floor) {
                out.non_monotone = true;
            }
        }
    }
    if (lx.size() < 2) {
        out.exact = true;
        out.slope = std::numeric_limits<double>::quiet_NaN();
        return out;
    }

    const auto n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    out.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dev = ly[i] - (my + out.slope * (lx[i] - mx));
        ss += dev * dev;
    }
    out.fit_residual = std::sqrt(ss / n);
    return out;
}

ConvergenceReport convergence_order(const std::function<double(double)>& check, std::span<const double> h,
                                    double floor, const std::string& label) {
    std::vector<double> residual;
    residual.reserve(h.size());
    for (double step : h) {
        residual.push_back(check(step));
    }
    const std::vector<double> floors(h.size(), floor);
    return fit_convergence(label, h, residual, floors);
}

GridSpec GridLadder::grid(int level) const {
    const double h = h0 / std::pow(2.0, level);
    const double dt = dt0 / std::pow(2.0, level);
    const double half = 0.5 * static_cast<double>(points - 1);
    GridSpec g;
    g.origin = {center.x - half * h, center.y - half * h, center.z - half * h};
    g.extent = {h * (points - 1), h * (points - 1), h * (points - 1)};
    g.points = {points, points, points};
    g.t_origin = t_center - half * dt;
    g.t_extent = dt * (points - 1);
    g.t_points = points;
    return g;
}

std::vector<double> GridLadder::spacings() const {
    std::vector<double> out;
    for (int level = 0; level < levels; ++level) {
        out.push_back(h0 / std::pow(2.0, level));
    }
    return out;
}

GridLadder default_ladder(double wavelength, double period, const RealVec3& center, double t_center) {
    if (!(wavelength > 0.0) || !(period > 0.0)) {
        throw ParameterError("wavelength and period must be positive");
    }
    return {center, t_center, wavelength / 20.0, period / 40.0, 9, 4};
}

std::vector<ConvergenceReport> convergence_suite(const EMFieldPair& pair, const Medium& medium,
                                                 const GridLadder& ladder) {
    std::vector<ResidualReport> levels;
    for (int level = 0; level < ladder.levels; ++level) {
        const GridSpec grid = ladder.grid(level);
        const SampledField E = sample(pair.E, grid);
        const SampledField B = sample(pair.B, grid);
        const Weights we = envelope_weights(E, pair.E(ladder.center, ladder.t_center));
        const Weights wb = envelope_weights(B, pair.B(ladder.center, ladder.t_center));
        ResidualReport report = maxwell_weighted(E, B, medium, we, wb);
        report.equations.push_back(wave_weighted(E, medium, labels::kWaveE, we).equations.front());
        report.equations.push_back(wave_weighted(B, medium, labels::kWaveB, wb).equations.front());
        levels.push_back(std::move(report));
    }
    const std::vector<double> h = ladder.spacings();
    std::vector<ConvergenceReport> out;
    for (const auto& eq : levels.front().equations) {
        std::vector<double> residual;
        std::vector<double> floors;
        for (const auto& report : levels) {
            const EquationResidual& r = report[eq.label];
            residual.push_back(r.max);
            floors.push_back(kRoundingFloor * r.scale);
        }
        out.push_back(fit_convergence(eq.label, h, residual, floors));
    }
    return out;
}

SampledField discrete_curl(const SampledField& field) {
    const GridSpec inner = shrunk(field.grid);
    SampledField out{inner, {}};
    out.values.reserve(inner.node_count());
    for (std::size_t flat = 0; flat < inner.node_count(); ++flat) {
        NodeIndex node = node_index(inner, flat);
        node[0] += 1;
        node[1] += 1;
        node[2] += 1;
        out.values.push_back(curl_at(field, node));
    }
    return out;
}

SampledScalar discrete_divergence(const SampledField& field) {
    const GridSpec inner = shrunk(field.grid);
    SampledScalar out{inner, {}};
    out.values.reserve(inner.node_count());
    for (std::size_t flat = 0; flat < inner.node_count(); ++flat) {
        NodeIndex node = node_index(inner, flat);
        node[0] += 1;
        node[1] += 1;
        node[2] += 1;
        out.values.push_back(divergence_at(field, node).value);
    }
    return out;
}

}  // namespace backlund
