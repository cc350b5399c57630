#pragma once

#include "lamerecon/elimination.hpp"

namespace lamerecon {

/// First-order system grad(mu) + Gamma mu = Phi assembled from the
/// eliminated combinations, valid on the mask.
struct TransportSystem {
    Grid grid;
    int dim = 2;
    double k = 0.0;
    Field Gamma; // vector
    Field Phi;   // vector
    std::vector<Field> beta;  // per target, vector
    std::vector<Field> gamma; // per target, scalar
    std::vector<Field> rhs;   // per target, scalar (the combined stars)
    Field condA;              // conditioning of the beta matrix
    Mask mask;

    explicit TransportSystem(const Grid& g)
        : grid(g), dim(g.dim()), Gamma(Field::vector(g)), Phi(Field::vector(g)),
          condA(Field::scalar(g)), mask(g) {}
};

/// Invert the dim x dim matrix with rows beta_l pointwise:
/// Gamma = A^-1 gamma, Phi = -k^2 A^-1 rstar. Points where cond(A) exceeds
/// `cond_cap` (or any input mask is false) are masked out, never fatal.
TransportSystem build_transport(const std::vector<FlatCombination>& vs, double k,
                                double cond_cap = 1e6);

struct RayField {
    Field mu;
    Mask set;         // points reached by an in-mask straight segment
    Mask nonpositive; // reached but mu <= 0 (flagged, value kept)
};

/// Variation-of-constants integration of the transport equation along the
/// straight segment from the boundary point x0 to each grid point, with
/// trapezoidal quadrature (step = step_factor * min grid spacing) and
/// multilinear interpolation of Gamma and Phi.
RayField integrate_ray(const TransportSystem& sys, const BoundaryScalar& boundary_mu,
                       const Point3& x0, double step_factor = 0.5);

enum class RecoveryMode { least_squares, ray };

struct RecoveryResult {
    Field mu;
    Mask recovered;
    Mask unreachable; // masked points that no mode could reach
    Mask nonpositive;
    double ls_residual = 0.0; // least-squares residual norm (ls mode)
};

/// Global recovery of mu on the masked region from Dirichlet data on the
/// domain boundary. `least_squares` solves the stacked discrete system
/// grad(mu) + Gamma mu = Phi in the least-squares sense; `ray` sweeps
/// straight rays from boundary sources and averages overlapping estimates.
RecoveryResult recover_global(const TransportSystem& sys,
                              const BoundaryScalar& boundary_mu,
                              RecoveryMode mode = RecoveryMode::least_squares);

} // namespace lamerecon
