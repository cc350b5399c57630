#include "lamerecon/grid.hpp"

#include <algorithm>

#include "lamerecon/errors.hpp"

namespace lamerecon {

Grid::Grid(int dim, Index3 extents, Point3 origin, Point3 spacing)
    : dim_(dim), extents_(extents), origin_(origin), spacing_(spacing) {
    if (dim != 2 && dim != 3)
        throw ContractViolation("Grid: dim must be 2 or 3");
    for (int a = 0; a < dim; ++a) {
        if (extents_[a] < 5)
            throw ContractViolation("Grid: extents must be >= 5 per axis");
        if (!(spacing_[a] > 0.0))
            throw ContractViolation("Grid: spacings must be positive");
    }
    for (int a = dim; a < 3; ++a) {
        extents_[a] = 1;
        origin_[a] = 0.0;
        spacing_[a] = 1.0;
    }
    npoints_ = 1;
    for (int a = 0; a < dim_; ++a) npoints_ *= static_cast<std::size_t>(extents_[a]);
    strides_ = {1, 1, 1};
    for (int a = dim_ - 2; a >= 0; --a)
        strides_[a] = strides_[a + 1] * static_cast<std::size_t>(extents_[a + 1]);
}

Grid Grid::square(int n, double side, Point3 origin) {
    double h = side / (n - 1);
    return Grid(2, {n, n, 1}, origin, {h, h, 1.0});
}

Grid Grid::cube(int n, double side, Point3 origin) {
    double h = side / (n - 1);
    return Grid(3, {n, n, n}, origin, {h, h, h});
}

double Grid::min_spacing() const {
    double h = spacing_[0];
    for (int a = 1; a < dim_; ++a) h = std::min(h, spacing_[a]);
    return h;
}

std::size_t Grid::boundary_point_count() const {
    std::size_t interior = 1;
    for (int a = 0; a < dim_; ++a) interior *= static_cast<std::size_t>(extents_[a] - 2);
    return npoints_ - interior;
}

Index3 Grid::unflat(std::size_t flat_index) const {
    Index3 idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat_index % extents_[a]);
        flat_index /= extents_[a];
    }
    return idx;
}

Point3 Grid::point(const Index3& idx) const {
    Point3 p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) p[a] = coord(a, idx[a]);
    return p;
}

Point3 Grid::center() const {
    Point3 p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a)
        p[a] = origin_[a] + 0.5 * spacing_[a] * (extents_[a] - 1);
    return p;
}

bool Grid::on_boundary(const Index3& idx) const {
    for (int a = 0; a < dim_; ++a)
        if (idx[a] == 0 || idx[a] == extents_[a] - 1) return true;
    return false;
}

int Grid::interior_depth(const Index3& idx) const {
    int depth = extents_[0];
    for (int a = 0; a < dim_; ++a)
        depth = std::min({depth, idx[a], extents_[a] - 1 - idx[a]});
    return depth;
}

bool Grid::operator==(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a) {
        if (extents_[a] != other.extents_[a]) return false;
        if (origin_[a] != other.origin_[a]) return false;
        if (spacing_[a] != other.spacing_[a]) return false;
    }
    return true;
}

} // namespace lamerecon
