#include "lamerecon/field.hpp"

#include <algorithm>
#include <cmath>

#include "lamerecon/errors.hpp"

namespace lamerecon {

Field::Field(Grid grid, Rank rank, int components, bool is_complex)
    : grid_(std::move(grid)), rank_(rank), components_(components), complex_(is_complex) {
    if (components_ < 1)
        throw ContractViolation("Field: components must be >= 1");
    values_.assign(grid_.point_count() * components_ * lanes(), 0.0);
}

Rank Field::rank_for(int components, int dim) {
    if (components == 1) return Rank::scalar;
    if (components == dim) return Rank::vector;
    if (components == dim * dim) return Rank::matrix;
    return Rank::other;
}

Field Field::real_part() const {
    Field out(grid_, rank_, components_, false);
    for (std::size_t p = 0; p < grid_.point_count(); ++p)
        for (int c = 0; c < components_; ++c) out.at(p, c) = at(p, c, 0);
    return out;
}

Field Field::imag_part() const {
    Field out(grid_, rank_, components_, false);
    if (!complex_) return out;
    for (std::size_t p = 0; p < grid_.point_count(); ++p)
        for (int c = 0; c < components_; ++c) out.at(p, c) = at(p, c, 1);
    return out;
}

Field Field::component(int c) const {
    if (c < 0 || c >= components_)
        throw ContractViolation("Field::component: index out of range");
    Field out(grid_, Rank::scalar, 1, complex_);
    for (std::size_t p = 0; p < grid_.point_count(); ++p)
        for (int lane = 0; lane < lanes(); ++lane) out.at(p, 0, lane) = at(p, c, lane);
    return out;
}

double Field::max_abs() const {
    double m = 0.0;
    if (complex_) {
        for (std::size_t p = 0; p < grid_.point_count(); ++p)
            for (int c = 0; c < components_; ++c) m = std::max(m, std::abs(cat(p, c)));
    } else {
        for (double v : values_) m = std::max(m, std::abs(v));
    }
    return m;
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

void Field::require_finite(const std::string& what) const {
    if (!all_finite())
        throw ContractViolation(what + ": non-finite values");
}

Mask::Mask(Grid grid, bool initial)
    : grid_(std::move(grid)), flags_(grid_.point_count(), initial ? 1 : 0) {}

std::size_t Mask::count_true() const {
    std::size_t n = 0;
    for (auto f : flags_) n += f != 0;
    return n;
}

double Mask::interior_coverage() const {
    std::size_t hits = 0, interior = 0;
    for (std::size_t p = 0; p < grid_.point_count(); ++p) {
        if (grid_.on_boundary(p)) continue;
        ++interior;
        hits += flags_[p] != 0;
    }
    return interior == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(interior);
}

Mask Mask::logical_and(const Mask& other) const {
    if (grid_ != other.grid_)
        throw ContractViolation("Mask::logical_and: grid mismatch");
    Mask out(grid_);
    for (std::size_t p = 0; p < flags_.size(); ++p)
        out.flags_[p] = (flags_[p] && other.flags_[p]) ? 1 : 0;
    return out;
}

} // namespace lamerecon
