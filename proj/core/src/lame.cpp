#include "lamerecon/lame.hpp"

#include <algorithm>
#include <cmath>

#include "lamerecon/errors.hpp"

namespace lamerecon {

LameParameters::LameParameters(Field lambda, Field mu, double lower, double upper)
    : lambda_(std::move(lambda)), mu_(std::move(mu)), lower_(lower), upper_(upper) {
    if (lambda_.grid() != mu_.grid())
        throw ContractViolation("LameParameters: lambda and mu on different grids");
    if (lambda_.components() != 1 || mu_.components() != 1 ||
        lambda_.is_complex() || mu_.is_complex())
        throw ContractViolation("LameParameters: lambda and mu must be real scalar fields");
    if (!(lower_ > 0.0) || !(upper_ >= lower_))
        throw ContractViolation("LameParameters: bounds must satisfy 0 < m <= M");
    lambda_.require_finite("LameParameters.lambda");
    mu_.require_finite("LameParameters.mu");
    for (std::size_t p = 0; p < grid().point_count(); ++p) {
        double l = lambda_.at(p), m = mu_.at(p);
        if (!(l > 0.0) || !(m > 0.0))
            throw ContractViolation("LameParameters: lambda and mu must be positive");
        if (l < lower_ || l > upper_ || m < lower_ || m > upper_)
            throw ContractViolation("LameParameters: values outside the [m, M] bounds");
    }
}

BoundaryData::BoundaryData(Grid grid, int components, std::string label)
    : grid_(std::move(grid)), components_(components), label_(std::move(label)) {
    rank_of_flat_.assign(grid_.point_count(), -1);
    for (std::size_t p = 0; p < grid_.point_count(); ++p) {
        if (grid_.on_boundary(p)) {
            rank_of_flat_[p] = static_cast<std::ptrdiff_t>(flats_.size());
            flats_.push_back(p);
        }
    }
    values_.assign(flats_.size() * components_, 0.0);
}

BoundaryData BoundaryData::trace(const Field& u, std::string label) {
    if (u.is_complex())
        throw ContractViolation("BoundaryData::trace: expects a real field");
    BoundaryData bd(u.grid(), u.components(), std::move(label));
    for (std::size_t r = 0; r < bd.size(); ++r) {
        std::size_t p = bd.flats_[r];
        for (int c = 0; c < u.components(); ++c) bd.at(r, c) = u.at(p, c);
    }
    return bd;
}

std::size_t BoundaryData::boundary_rank(std::size_t flat_index) const {
    std::ptrdiff_t r = rank_of_flat_[flat_index];
    if (r < 0) throw ContractViolation("BoundaryData: point is not on the boundary");
    return static_cast<std::size_t>(r);
}

Field BoundaryData::to_field() const {
    Field f(grid_, Field::rank_for(components_, grid_.dim()), components_, false);
    for (std::size_t r = 0; r < size(); ++r)
        for (int c = 0; c < components_; ++c) f.at(flats_[r], c) = at(r, c);
    return f;
}

double BoundaryData::normalize_sup() {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    if (m == 0.0) return 1.0;
    for (double& v : values_) v /= m;
    return m;
}

BoundaryScalar BoundaryScalar::constant(double v) {
    BoundaryScalar b;
    b.constant_ = true;
    b.value_ = v;
    return b;
}

BoundaryScalar BoundaryScalar::trace(const Field& f) {
    if (f.components() != 1 || f.is_complex())
        throw ContractViolation("BoundaryScalar::trace: expects a real scalar field");
    BoundaryScalar b;
    b.constant_ = false;
    b.samples_.assign(f.values().begin(), f.values().end());
    return b;
}

double BoundaryScalar::value_at(const Grid& g, const Index3& idx) const {
    if (constant_) return value_;
    return samples_.at(g.flat(idx));
}

} // namespace lamerecon
