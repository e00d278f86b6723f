#pragma once

// CSV field samples and JSON serialization of residual/convergence reports.
//
// CSV schema: header `x,y,z,t,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,
// Bx_re,Bx_im,By_re,By_im,Bz_re,Bz_im`, one row per node in flat-index order
// (x slowest, t fastest), every number printed with 17 significant digits.

#include "backlund/residual_checker.hpp"
#include "backlund/vectors_grid.hpp"

#include <iosfwd>
#include <optional>

#include <json.hpp>

namespace backlund::io {

struct FieldSamples {
    SampledField E;
    SampledField B;
};

void write_field_csv(std::ostream& os, const SampledField& E, const SampledField& B);

/// Reads a field CSV. With `grid` given, node coordinates must match it
/// exactly; otherwise the grid is inferred from the coordinate columns.
/// Throws Error on malformed input.
FieldSamples read_field_csv(std::istream& is, const std::optional<GridSpec>& grid = std::nullopt);

/// Infers a uniform grid from sorted distinct coordinates per axis.
GridSpec infer_grid(const std::vector<std::array<double, 4>>& coords);

nlohmann::json grid_to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const ConvergenceReport& report);

/// `%.17g`
std::string format_double(double v);

}  // namespace backlund::io
