#include "backlund/vectors_grid.hpp"

#include "backlund/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace backlund {

double dot(const RealVec3& a, const RealVec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

RealVec3 cross(const RealVec3& a, const RealVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const RealVec3& a) {
    return std::hypot(a.x, a.y, a.z);
}

RealVec3 normalized(const RealVec3& a) {
    const double n = norm(a);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw ParameterError("cannot normalize a zero or non-finite vector");
    }
    return a * (1.0 / n);
}

ComplexVec3 cross(const ComplexVec3& a, const ComplexVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

ComplexVec3 cross(const RealVec3& a, const ComplexVec3& b) {
    return cross(ComplexVec3(a), b);
}

cplx dot(const ComplexVec3& a, const ComplexVec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

cplx dot(const RealVec3& a, const ComplexVec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm2(const ComplexVec3& a) {
    return std::norm(a.x) + std::norm(a.y) + std::norm(a.z);
}

double norm(const ComplexVec3& a) {
    return std::sqrt(norm2(a));
}

std::string_view axis_name(Axis axis) {
    switch (axis) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
        case Axis::T: return "t";
    }
    return "?";
}

void GridSpec::validate() const {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z, Axis::T}) {
        const int n = count(axis);
        if (n < kMinGridPoints) {
            std::ostringstream msg;
            msg << "grid axis " << axis_name(axis) << " has " << n << " points; at least "
                << kMinGridPoints << " are required";
            throw GridError(msg.str());
        }
        const double ext = axis == Axis::T ? t_extent : extent[static_cast<std::size_t>(axis)];
        if (!(ext > 0.0) || !std::isfinite(ext)) {
            std::ostringstream msg;
            msg << "grid axis " << axis_name(axis) << " has non-positive extent " << ext;
            throw GridError(msg.str());
        }
    }
}

int GridSpec::count(Axis axis) const {
    return axis == Axis::T ? t_points : points[static_cast<std::size_t>(axis)];
}

double GridSpec::spacing(Axis axis) const {
    const double ext = axis == Axis::T ? t_extent : extent[static_cast<std::size_t>(axis)];
    return ext / static_cast<double>(count(axis) - 1);
}

double GridSpec::coordinate(Axis axis, int index) const {
    const double o = axis == Axis::T ? t_origin : origin[static_cast<std::size_t>(axis)];
    return o + static_cast<double>(index) * spacing(axis);
}

std::size_t GridSpec::node_count() const {
    return static_cast<std::size_t>(points[0]) * static_cast<std::size_t>(points[1]) *
           static_cast<std::size_t>(points[2]) * static_cast<std::size_t>(t_points);
}

std::size_t flat_index(const GridSpec& grid, const NodeIndex& node) {
    std::size_t idx = static_cast<std::size_t>(node[0]);
    idx = idx * static_cast<std::size_t>(grid.points[1]) + static_cast<std::size_t>(node[1]);
    idx = idx * static_cast<std::size_t>(grid.points[2]) + static_cast<std::size_t>(node[2]);
    idx = idx * static_cast<std::size_t>(grid.t_points) + static_cast<std::size_t>(node[3]);
    return idx;
}

NodeIndex node_index(const GridSpec& grid, std::size_t flat) {
    NodeIndex node{};
    node[3] = static_cast<int>(flat % static_cast<std::size_t>(grid.t_points));
    flat /= static_cast<std::size_t>(grid.t_points);
    node[2] = static_cast<int>(flat % static_cast<std::size_t>(grid.points[2]));
    flat /= static_cast<std::size_t>(grid.points[2]);
    node[1] = static_cast<int>(flat % static_cast<std::size_t>(grid.points[1]));
    node[0] = static_cast<int>(flat / static_cast<std::size_t>(grid.points[1]));
    return node;
}

RealVec3 position(const GridSpec& grid, const NodeIndex& node) {
    return {grid.coordinate(Axis::X, node[0]), grid.coordinate(Axis::Y, node[1]),
            grid.coordinate(Axis::Z, node[2])};
}

SampledField sample(const VectorField& field, const GridSpec& grid) {
    grid.validate();
    SampledField out{grid, {}};
    const std::size_t n = grid.node_count();
    out.values.reserve(n);
    for (std::size_t flat = 0; flat < n; ++flat) {
        const NodeIndex node = node_index(grid, flat);
        const RealVec3 r = position(grid, node);
        const double t = grid.coordinate(Axis::T, node[3]);
        ComplexVec3 value;
        try {
            value = field(r, t);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "field evaluation failed at node " << flat << ": " << e.what();
            throw SampleError(msg.str(), flat);
        }
        for (std::size_t c = 0; c < 3; ++c) {
            if (!std::isfinite(value[c].real()) || !std::isfinite(value[c].imag())) {
                std::ostringstream msg;
                msg << "field evaluation produced a non-finite value at node " << flat;
                throw SampleError(msg.str(), flat);
            }
        }
        out.values.push_back(value);
    }
    return out;
}

ComplexVec3 central_diff(const SampledField& samples, Axis axis, int order, const NodeIndex& node) {
    if (order != 1 && order != 2) {
        throw ParameterError("central_diff order must be 1 or 2");
    }
    const auto a = static_cast<std::size_t>(axis);
    const int n = samples.grid.count(axis);
    if (node[a] < order || node[a] > n - 1 - order) {
        std::ostringstream msg;
        msg << "node index " << node[a] << " on axis " << axis_name(axis)
            << " is too close to the boundary for an order-" << order << " stencil (axis has "
            << n << " points)";
        throw GridError(msg.str());
    }
    NodeIndex plus = node;
    NodeIndex minus = node;
    plus[a] += 1;
    minus[a] -= 1;
    const double h = samples.grid.spacing(axis);
    const ComplexVec3& fp = samples.at(plus);
    const ComplexVec3& fm = samples.at(minus);
    if (order == 1) {
        return (fp - fm) * cplx(1.0 / (2.0 * h));
    }
    const ComplexVec3& f0 = samples.at(node);
    return (fp - 2.0 * f0 + fm) * cplx(1.0 / (h * h));
}

bool is_interior(const GridSpec& grid, const NodeIndex& node, int shell) {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z, Axis::T}) {
        const auto a = static_cast<std::size_t>(axis);
        if (node[a] < shell || node[a] > grid.count(axis) - 1 - shell) {
            return false;
        }
    }
    return true;
}

}  // namespace backlund
