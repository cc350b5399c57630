#pragma once

#include "lamerecon/elimination.hpp"

namespace lamerecon {

/// Pointwise scalars of the lambda-variant elimination:
/// kappa = sum of the first dim entries of v, sigma = -(sum of all entries).
/// On the mask |kappa| >= eps_kappa, lambda = sigma mu / kappa - (k^2/kappa) r*.
struct KappaSigma {
    Field kappa;
    Field sigma;
    Field rhs_star;
    Mask mask;
    double eps_kappa = 0.0;
};

KappaSigma compute_kappa_sigma(const FlatCombination& v, int dim,
                               double eps_rel = 1e-3);

struct LambdaResult {
    Field lambda;
    Mask mask;
    Mask negative; // recovered lambda <= 0 (outside the admissible class)
};

LambdaResult recover_lambda(const KappaSigma& ks, const Field& mu, double k);

/// Fill the complement of `known` by discrete harmonic extension (Dirichlet
/// on known points, zero-Neumann on the domain boundary). Filled values are
/// extrapolation, not reconstruction; callers must keep the flag.
Field inpaint_harmonic(const Field& f, const Mask& known);

} // namespace lamerecon
