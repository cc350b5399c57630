#pragma once

#include "lamerecon/field.hpp"

namespace lamerecon {

/// Finite-difference calculus on uniform grids.
///
/// All first and second derivative operators are second order: central
/// stencils in the interior, one-sided stencils of the same order at the
/// boundary, so derivative fields are defined up to the boundary. Every
/// operator is exact on polynomials of total degree <= 2.

/// Per-component derivative along one axis. Works for real and complex fields.
Field derivative(const Field& f, int axis);

/// Per-component second derivative; a == b uses the fused 3/4-point stencil,
/// a != b composes first derivatives and symmetrizes.
Field second_derivative(const Field& f, int a, int b);

/// grad f for scalar f.
Field gradient(const Field& f);

/// div v for a vector field (components == dim).
Field divergence(const Field& v);

/// S(grad u) = (grad u + grad u^T) / 2 for a vector field.
Field sym_grad(const Field& u);

/// Hessian of a scalar field, symmetrized.
Field second_derivatives(const Field& f);

/// Pointwise linear combination a*f + b*g.
Field axpby(double a, const Field& f, double b, const Field& g);

/// Multilinear interpolation of one component at a physical point.
/// Clamps to the grid box, so it also serves as a continuous extension.
double interpolate(const Field& f, const Point3& x, int c = 0, int lane = 0);

/// Max over points of sum_c (|f| + sum_a |d_a f| + sum_{a<=b} |d_a d_b f|).
/// Computable stand-in for a C^2 norm on the grid.
double discrete_c2_norm(const Field& f);

} // namespace lamerecon
