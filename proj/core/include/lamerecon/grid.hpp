#pragma once

#include <array>
#include <cstddef>

namespace lamerecon {

using Index3 = std::array<int, 3>;
using Point3 = std::array<double, 3>;

/// Uniform rectilinear discretization of an axis-aligned rectangle/box.
///
/// Points are addressed row-major with the last axis fastest:
/// flat = (i0 * e1 + i1) in 2D, ((i0 * e1 + i1) * e2 + i2) in 3D.
/// Unused axes of the fixed-size arrays hold extent 1, origin 0, spacing 1.
class Grid {
public:
    Grid(int dim, Index3 extents, Point3 origin, Point3 spacing);

    /// n x n points on [0, side]^2.
    static Grid square(int n, double side = 1.0, Point3 origin = {0.0, 0.0, 0.0});
    /// n x n x n points on [0, side]^3.
    static Grid cube(int n, double side = 1.0, Point3 origin = {0.0, 0.0, 0.0});

    int dim() const { return dim_; }
    int extent(int axis) const { return extents_[axis]; }
    double origin(int axis) const { return origin_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    double min_spacing() const;

    std::size_t point_count() const { return npoints_; }
    std::size_t boundary_point_count() const;

    std::size_t flat(const Index3& idx) const {
        std::size_t f = static_cast<std::size_t>(idx[0]);
        for (int a = 1; a < dim_; ++a) f = f * extents_[a] + idx[a];
        return f;
    }
    Index3 unflat(std::size_t flat_index) const;

    /// Stride of one step along `axis` in flat index space.
    std::size_t stride(int axis) const { return strides_[axis]; }

    double coord(int axis, int i) const { return origin_[axis] + spacing_[axis] * i; }
    Point3 point(const Index3& idx) const;
    Point3 point(std::size_t flat_index) const { return point(unflat(flat_index)); }
    Point3 center() const;

    bool on_boundary(const Index3& idx) const;
    bool on_boundary(std::size_t flat_index) const { return on_boundary(unflat(flat_index)); }
    /// Distance (in cells) to the closest face along any axis.
    int interior_depth(const Index3& idx) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    int dim_;
    Index3 extents_;
    Point3 origin_;
    Point3 spacing_;
    std::size_t npoints_;
    std::array<std::size_t, 3> strides_;
};

} // namespace lamerecon
