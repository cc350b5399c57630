#pragma once

#include <string>
#include <vector>

#include "lamerecon/lame.hpp"

namespace lamerecon {

enum class Variant { mu, lambda };

/// Per-solution (sharp, flat, star) triples for the pointwise identity
///   sharp . F + flat . G = -k^2 star,
/// which is the sum of the components of the elasticity system. The
/// mu-variant groups the (lambda+mu) terms into F so that eliminating the
/// sharp part leaves a transport equation for mu; the lambda-variant groups
/// them into G so that elimination leaves an algebraic relation for lambda.
struct ReductionBundle {
    Variant variant;
    int dim;
    Grid grid;
    double k = 0.0;
    std::vector<Field> sharp; // 2*dim components each
    std::vector<Field> flat;  // 2*dim components each
    std::vector<Field> star;  // scalar each
    std::vector<std::string> labels;

    std::size_t solution_count() const { return sharp.size(); }
    void append(const ReductionBundle& other);
};

/// mu-variant reduction of one displacement field.
/// 2D: sharp = (d1 div, d2 div, div, div), flat = (a+b, a-b, d1(a+b), d2(a-b)),
///     star = u1 + u2, with a = d2 u1 + d1 u2, b = d1 u1 - d2 u2.
/// 3D: sharp = (grad div, div, div, div), flat = (b23, b13, b12, d1 b23,
///     d2 b13, d3 b12), star = u1 + u2 + u3.
ReductionBundle reduce_mu(const Field& u, const std::string& label = {});

/// lambda-variant reduction (sharp and flat roles swapped pairwise).
ReductionBundle reduce_lambda(const Field& u, const std::string& label = {});

ReductionBundle reduce(Variant v, const std::vector<Field>& us, double k);

/// Indices of the distinct entries of a sharp vector (the duplicated div
/// entries collapse).
std::vector<int> distinct_sharp_rows(Variant v, int dim);
int basis_count(int dim);
int target_count(Variant v, int dim);

/// sharp . F + flat . G + k^2 star evaluated with the true parameters; the
/// central correctness oracle. For solution_index < 0 returns the pointwise
/// max of |residual| over all solutions in the bundle.
Field identity_residual(const ReductionBundle& bundle, const LameParameters& params,
                        double k, int solution_index = -1);

} // namespace lamerecon
