#pragma once

#include <string>
#include <vector>

#include "lamerecon/field.hpp"

namespace lamerecon {

/// The pair (lambda, mu) as positive scalar fields plus the [m, M] bounds
/// of the admissible class.
class LameParameters {
public:
    LameParameters(Field lambda, Field mu, double lower = 1e-6, double upper = 1e6);

    const Field& lambda() const { return lambda_; }
    const Field& mu() const { return mu_; }
    const Grid& grid() const { return lambda_.grid(); }
    double lower_bound() const { return lower_; }
    double upper_bound() const { return upper_; }

private:
    Field lambda_;
    Field mu_;
    double lower_, upper_;
};

/// Vector-valued Dirichlet data on every boundary point of a grid.
/// Boundary points are enumerated in grid (flat) order.
class BoundaryData {
public:
    BoundaryData(Grid grid, int components, std::string label = {});

    /// Trace of a full-grid vector field.
    static BoundaryData trace(const Field& u, std::string label = {});

    const Grid& grid() const { return grid_; }
    int components() const { return components_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    /// Value storage indexed by boundary rank (see boundary_rank).
    double& at(std::size_t boundary_rank, int c) { return values_[boundary_rank * components_ + c]; }
    double at(std::size_t boundary_rank, int c) const { return values_[boundary_rank * components_ + c]; }

    /// Rank of a boundary point in the enumeration; throws if interior.
    std::size_t boundary_rank(std::size_t flat_index) const;
    /// Flat grid index of the boundary point with the given rank.
    std::size_t flat_of_rank(std::size_t boundary_rank) const { return flats_[boundary_rank]; }
    std::size_t size() const { return flats_.size(); }

    /// Expand to a full-grid field (zero in the interior).
    Field to_field() const;
    /// Divide all values by the sup norm; returns the scale (1 if zero data).
    double normalize_sup();

private:
    Grid grid_;
    int components_;
    std::string label_;
    std::vector<std::size_t> flats_;
    std::vector<std::ptrdiff_t> rank_of_flat_; // -1 for interior points
    std::vector<double> values_;
};

/// Scalar boundary values, either a constant or the trace of a field.
class BoundaryScalar {
public:
    static BoundaryScalar constant(double v);
    static BoundaryScalar trace(const Field& f);

    /// Value at a boundary grid point.
    double value_at(const Grid& g, const Index3& idx) const;

private:
    bool constant_ = true;
    double value_ = 0.0;
    std::vector<double> samples_; // full grid, only boundary entries meaningful
};

} // namespace lamerecon
