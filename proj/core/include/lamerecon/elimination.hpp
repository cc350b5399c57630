#pragma once

#include "lamerecon/reduction.hpp"

namespace lamerecon {

struct EliminationOptions {
    /// mask threshold = sigma_rel_threshold * median distinct-sharp norm
    double sigma_rel_threshold = 1e-3;
    /// max basis subsets enumerated per point before falling back to a
    /// greedy column-pivoted selection
    int subset_cap = 200;
};

/// Per-point choice of a well-conditioned basis among the solutions' sharp
/// vectors. `selection` holds basis_count solution indices per point;
/// the mask is true where the smallest singular value of the basis matrix
/// clears the threshold.
struct EliminationPlan {
    Variant variant = Variant::mu;
    int dim = 2;
    int basis_count = 3;
    std::vector<int> candidates;
    std::vector<std::int32_t> selection; // npoints * basis_count, -1 where unset
    Field sigma_min;
    Mask mask;
    double threshold_abs = 0.0;

    EliminationPlan(const Grid& g, int bc)
        : selection(g.point_count() * bc, -1), sigma_min(Field::scalar(g)), mask(g) {}
};

/// Scan candidate basis subsets per point and keep the one maximizing the
/// smallest singular value of the matrix of distinct sharp entries.
/// `excluded_targets` are reserved as elimination targets and never enter
/// the basis.
EliminationPlan independence_map(const ReductionBundle& bundle,
                                 const std::vector<int>& excluded_targets = {},
                                 const EliminationOptions& opts = {});

/// Coefficients that annihilate the target's sharp vector against the
/// selected basis: sharp_target + sum_j theta_j sharp_basis_j = 0.
struct ThetaField {
    Field theta; // basis_count components
    Mask mask;
    double max_rel_residual = 0.0; // annihilation check over masked points
    int target_index = -1;
};

ThetaField solve_theta(const EliminationPlan& plan, const ReductionBundle& bundle,
                       int target_index);

/// The surviving combination v = flat_target + sum_j theta_j flat_basis_j and
/// the matching star combination r* (the right-hand side -k^2 r* carrier).
struct FlatCombination {
    Field v;     // 2*dim components
    Field rstar; // scalar
    Mask mask;
};

FlatCombination combine_flat(const EliminationPlan& plan, const ReductionBundle& bundle,
                             const ThetaField& theta, int target_index);

} // namespace lamerecon
