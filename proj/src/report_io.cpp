#include "backlund/report_io.hpp"

#include "backlund/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace backlund::io {

namespace {

constexpr const char* kHeader =
    "x,y,z,t,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,Bx_re,Bx_im,By_re,By_im,Bz_re,Bz_im";
constexpr std::size_t kColumns = 16;

std::vector<double> split_numbers(const std::string& line, std::size_t line_no) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= line.size()) {
        std::size_t end = line.find(',', start);
        if (end == std::string::npos) {
            end = line.size();
        }
        const std::string cell = line.substr(start, end - start);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != cell.size()) {
            std::ostringstream msg;
            msg << "line " << line_no << ": cannot parse number '" << cell << "'";
            throw Error(msg.str());
        }
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_field_csv(std::ostream& os, const SampledField& E, const SampledField& B) {
    if (!(E.grid == B.grid) || E.values.size() != B.values.size()) {
        throw GridError("E and B samples must share a grid");
    }
    os << kHeader << '\n';
    const GridSpec& grid = E.grid;
    for (std::size_t flat = 0; flat < E.values.size(); ++flat) {
        const NodeIndex node = node_index(grid, flat);
        const RealVec3 r = position(grid, node);
        os << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.z) << ','
           << format_double(grid.coordinate(Axis::T, node[3]));
        for (const ComplexVec3* f : {&E.values[flat], &B.values[flat]}) {
            for (std::size_t c = 0; c < 3; ++c) {
                os << ',' << format_double((*f)[c].real()) << ',' << format_double((*f)[c].imag());
            }
        }
        os << '\n';
    }
}

GridSpec infer_grid(const std::vector<std::array<double, 4>>& coords) {
    GridSpec grid;
    for (std::size_t a = 0; a < 4; ++a) {
        std::set<double> distinct;
        for (const auto& c : coords) {
            distinct.insert(c[a]);
        }
        if (distinct.size() < 2) {
            throw GridError("cannot infer a grid axis with fewer than two distinct coordinates");
        }
        const double first = *distinct.begin();
        const double last = *distinct.rbegin();
        const int n = static_cast<int>(distinct.size());
        if (a < 3) {
            grid.origin[a] = first;
            grid.extent[a] = last - first;
            grid.points[a] = n;
        } else {
            grid.t_origin = first;
            grid.t_extent = last - first;
            grid.t_points = n;
        }
    }
    grid.validate();
    return grid;
}

FieldSamples read_field_csv(std::istream& is, const std::optional<GridSpec>& grid) {
    std::string line;
    if (!std::getline(is, line)) {
        throw Error("empty field CSV");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kHeader) {
        throw Error("unexpected field CSV header: " + line);
    }

    std::vector<std::array<double, 4>> coords;
    std::vector<ComplexVec3> e_values;
    std::vector<ComplexVec3> b_values;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::vector<double> v = split_numbers(line, line_no);
        if (v.size() != kColumns) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected " << kColumns << " columns, found " << v.size();
            throw Error(msg.str());
        }
        coords.push_back({v[0], v[1], v[2], v[3]});
        e_values.emplace_back(cplx(v[4], v[5]), cplx(v[6], v[7]), cplx(v[8], v[9]));
        b_values.emplace_back(cplx(v[10], v[11]), cplx(v[12], v[13]), cplx(v[14], v[15]));
    }

    const GridSpec g = grid ? *grid : infer_grid(coords);
    g.validate();
    if (coords.size() != g.node_count()) {
        std::ostringstream msg;
        msg << "field CSV has " << coords.size() << " rows but the grid has " << g.node_count() << " nodes";
        throw Error(msg.str());
    }
    for (std::size_t flat = 0; flat < coords.size(); ++flat) {
        const NodeIndex node = node_index(g, flat);
        const RealVec3 r = position(g, node);
        const double t = g.coordinate(Axis::T, node[3]);
        const auto& c = coords[flat];
        const bool match = grid ? (c[0] == r.x && c[1] == r.y && c[2] == r.z && c[3] == t)
                                : (std::abs(c[0] - r.x) <= 1e-9 * (1.0 + std::abs(r.x)) &&
                                   std::abs(c[1] - r.y) <= 1e-9 * (1.0 + std::abs(r.y)) &&
                                   std::abs(c[2] - r.z) <= 1e-9 * (1.0 + std::abs(r.z)) &&
                                   std::abs(c[3] - t) <= 1e-9 * (1.0 + std::abs(t)));
        if (!match) {
            std::ostringstream msg;
            msg << "row " << flat + 2 << " coordinates do not match grid node " << flat
                << " (rows must be in x, y, z, t row-major order)";
            throw Error(msg.str());
        }
    }
    return {{g, std::move(e_values)}, {g, std::move(b_values)}};
}

nlohmann::json grid_to_json(const GridSpec& grid) {
    return {{"origin", {grid.origin.x, grid.origin.y, grid.origin.z}},
            {"extent", {grid.extent.x, grid.extent.y, grid.extent.z}},
            {"points", {grid.points[0], grid.points[1], grid.points[2]}},
            {"t_origin", grid.t_origin},
            {"t_extent", grid.t_extent},
            {"t_points", grid.t_points}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
    try {
        GridSpec g;
        const auto& o = j.at("origin");
        const auto& e = j.at("extent");
        const auto& p = j.at("points");
        g.origin = {o.at(0).get<double>(), o.at(1).get<double>(), o.at(2).get<double>()};
        g.extent = {e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()};
        g.points = {p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>()};
        g.t_origin = j.at("t_origin").get<double>();
        g.t_extent = j.at("t_extent").get<double>();
        g.t_points = j.at("t_points").get<int>();
        g.validate();
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed grid JSON: ") + e.what());
    }
}

nlohmann::json to_json(const ResidualReport& report) {
    nlohmann::json eqs = nlohmann::json::array();
    for (const auto& eq : report.equations) {
        eqs.push_back({{"name", eq.label}, {"max", eq.max}, {"rms", eq.rms}, {"scale", eq.scale}});
    }
    return {{"h", report.h}, {"dt", report.dt}, {"nodes", report.node_count}, {"equations", eqs}};
}

nlohmann::json to_json(const ConvergenceReport& report) {
    nlohmann::json j = {{"name", report.label},
                        {"h", report.h},
                        {"residual", report.residual},
                        {"exact", report.exact},
                        {"non_monotone", report.non_monotone},
                        {"fit_residual", report.fit_residual}};
    if (report.exact) {
        j["slope"] = nullptr;
        j["order"] = "exact";
    } else {
        j["slope"] = report.slope;
    }
    return j;
}

}  // namespace backlund::io
