#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace backlund {

using cplx = std::complex<double>;

struct RealVec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    RealVec3& operator+=(const RealVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    RealVec3& operator-=(const RealVec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    RealVec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend bool operator==(const RealVec3&, const RealVec3&) = default;
};

inline RealVec3 operator+(RealVec3 a, const RealVec3& b) { return a += b; }
inline RealVec3 operator-(RealVec3 a, const RealVec3& b) { return a -= b; }
inline RealVec3 operator-(const RealVec3& a) { return {-a.x, -a.y, -a.z}; }
inline RealVec3 operator*(double s, RealVec3 a) { return a *= s; }
inline RealVec3 operator*(RealVec3 a, double s) { return a *= s; }

double dot(const RealVec3& a, const RealVec3& b);
RealVec3 cross(const RealVec3& a, const RealVec3& b);
double norm(const RealVec3& a);

/// Returns a / |a|; throws ParameterError for the zero vector.
RealVec3 normalized(const RealVec3& a);

/// Complex 3-vector; holds field amplitudes and field values.
struct ComplexVec3 {
    cplx x{};
    cplx y{};
    cplx z{};

    ComplexVec3() = default;
    ComplexVec3(cplx x_, cplx y_, cplx z_) : x(x_), y(y_), z(z_) {}
    explicit ComplexVec3(const RealVec3& r) : x(r.x), y(r.y), z(r.z) {}

    cplx& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    const cplx& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    ComplexVec3& operator+=(const ComplexVec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    ComplexVec3& operator-=(const ComplexVec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    ComplexVec3& operator*=(cplx s) { x *= s; y *= s; z *= s; return *this; }

    RealVec3 real() const { return {x.real(), y.real(), z.real()}; }
    RealVec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }

    friend bool operator==(const ComplexVec3&, const ComplexVec3&) = default;
};

inline ComplexVec3 operator+(ComplexVec3 a, const ComplexVec3& b) { return a += b; }
inline ComplexVec3 operator-(ComplexVec3 a, const ComplexVec3& b) { return a -= b; }
inline ComplexVec3 operator-(const ComplexVec3& a) { return {-a.x, -a.y, -a.z}; }
inline ComplexVec3 operator*(cplx s, ComplexVec3 a) { return a *= s; }
inline ComplexVec3 operator*(ComplexVec3 a, cplx s) { return a *= s; }
inline ComplexVec3 operator*(double s, ComplexVec3 a) { return a *= cplx(s); }

/// Complex cross product, component-wise (no conjugation).
ComplexVec3 cross(const ComplexVec3& a, const ComplexVec3& b);
ComplexVec3 cross(const RealVec3& a, const ComplexVec3& b);

/// Unconjugated bilinear product a.x*b.x + a.y*b.y + a.z*b.z.
cplx dot(const ComplexVec3& a, const ComplexVec3& b);
cplx dot(const RealVec3& a, const ComplexVec3& b);

/// |x|^2 + |y|^2 + |z|^2 (Hermitian norm squared).
double norm2(const ComplexVec3& a);
double norm(const ComplexVec3& a);

// ---------------------------------------------------------------------------
// Sampling grids
// ---------------------------------------------------------------------------

enum class Axis : int { X = 0, Y = 1, Z = 2, T = 3 };

std::string_view axis_name(Axis axis);

inline constexpr int kMinGridPoints = 5;

/// Uniform space-time grid. Node i along an axis sits at origin + i * spacing.
struct GridSpec {
    RealVec3 origin{};
    RealVec3 extent{1.0, 1.0, 1.0};
    std::array<int, 3> points{kMinGridPoints, kMinGridPoints, kMinGridPoints};
    double t_origin = 0.0;
    double t_extent = 1.0;
    int t_points = kMinGridPoints;

    /// Throws GridError if any axis has fewer than kMinGridPoints nodes
    /// or a non-positive extent.
    void validate() const;

    int count(Axis axis) const;
    double spacing(Axis axis) const;
    double coordinate(Axis axis, int index) const;
    std::size_t node_count() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// (ix, iy, iz, it) index of a grid node.
using NodeIndex = std::array<int, 4>;

/// Row-major flat index: x slowest, t fastest.
std::size_t flat_index(const GridSpec& grid, const NodeIndex& node);
NodeIndex node_index(const GridSpec& grid, std::size_t flat);
RealVec3 position(const GridSpec& grid, const NodeIndex& node);

/// A vector field evaluable at (r, t).
using VectorField = std::function<ComplexVec3(const RealVec3&, double)>;

struct SampledField {
    GridSpec grid;
    std::vector<ComplexVec3> values;

    const ComplexVec3& at(const NodeIndex& node) const { return values[flat_index(grid, node)]; }
};

/// Evaluates the field at every node. Evaluation failures (exceptions or
/// non-finite values) are rethrown as SampleError carrying the flat node index.
SampledField sample(const VectorField& field, const GridSpec& grid);

/// Second-order central difference along one axis.
///   order 1: (f[+1] - f[-1]) / 2h
///   order 2: (f[+1] - 2 f[0] + f[-1]) / h^2
/// The node must sit at least `order` nodes away from both ends of the axis.
ComplexVec3 central_diff(const SampledField& samples, Axis axis, int order, const NodeIndex& node);

/// True when `node` is at least `shell` nodes away from every boundary of the
/// spatial and temporal axes.
bool is_interior(const GridSpec& grid, const NodeIndex& node, int shell);

}  // namespace backlund
