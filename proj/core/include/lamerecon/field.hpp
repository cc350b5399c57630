#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lamerecon/grid.hpp"

namespace lamerecon {

enum class Rank : std::uint8_t { scalar, vector, matrix, other };

/// Sample array over a Grid: `components` values per point, real or complex.
///
/// Storage is point-major with components contiguous per point; complex
/// fields interleave (re, im) per component. All operations in this library
/// treat fields as immutable inputs and return fresh fields.
class Field {
public:
    Field(Grid grid, Rank rank, int components, bool is_complex = false);

    static Field scalar(const Grid& g, bool is_complex = false) {
        return Field(g, Rank::scalar, 1, is_complex);
    }
    static Field vector(const Grid& g, bool is_complex = false) {
        return Field(g, Rank::vector, g.dim(), is_complex);
    }
    static Field matrix(const Grid& g, bool is_complex = false) {
        return Field(g, Rank::matrix, g.dim() * g.dim(), is_complex);
    }
    static Field multi(const Grid& g, int components, bool is_complex = false) {
        return Field(g, Rank::other, components, is_complex);
    }

    /// Deduce the rank enum from a component count (used by the LFLD reader).
    static Rank rank_for(int components, int dim);

    const Grid& grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return components_; }
    bool is_complex() const { return complex_; }
    int lanes() const { return complex_ ? 2 : 1; }

    double& at(std::size_t p, int c = 0, int lane = 0) {
        return values_[(p * components_ + c) * lanes() + lane];
    }
    double at(std::size_t p, int c = 0, int lane = 0) const {
        return values_[(p * components_ + c) * lanes() + lane];
    }
    std::complex<double> cat(std::size_t p, int c = 0) const {
        if (!complex_) return {at(p, c), 0.0};
        std::size_t b = (p * components_ + c) * 2;
        return {values_[b], values_[b + 1]};
    }
    void set(std::size_t p, int c, std::complex<double> v) {
        std::size_t b = (p * components_ + c) * 2;
        values_[b] = v.real();
        values_[b + 1] = v.imag();
    }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t value_count() const { return values_.size(); }

    Field real_part() const;
    Field imag_part() const;
    /// Extract one component as a scalar field (keeps complexity flag).
    Field component(int c) const;

    double max_abs() const;
    bool all_finite() const;
    /// Throws ContractViolation naming `what` if any entry is NaN/Inf.
    void require_finite(const std::string& what) const;

private:
    Grid grid_;
    Rank rank_;
    int components_;
    bool complex_;
    std::vector<double> values_;
};

/// Boolean flag per grid point; marks where a method's hypotheses hold.
class Mask {
public:
    explicit Mask(Grid grid, bool initial = false);

    const Grid& grid() const { return grid_; }
    bool operator[](std::size_t p) const { return flags_[p] != 0; }
    void set(std::size_t p, bool v) { flags_[p] = v ? 1 : 0; }
    std::size_t count_true() const;
    /// Fraction of strict-interior points flagged true.
    double interior_coverage() const;

    Mask logical_and(const Mask& other) const;

    const std::vector<std::uint8_t>& flags() const { return flags_; }
    std::vector<std::uint8_t>& flags() { return flags_; }

private:
    Grid grid_;
    std::vector<std::uint8_t> flags_;
};

} // namespace lamerecon
