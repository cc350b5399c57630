#pragma once

#include <functional>
#include <string>

#include "lamerecon/lame.hpp"

namespace lamerecon {

/// Analytic scalar function of a physical point. Phantom samplers are defined
/// on all of R^n, so they can also be evaluated on padded grids.
using ScalarSampler = std::function<double(const Point3&)>;

/// Parse a phantom spec string into a sampler. Supported forms:
///   constant:<v>
///   smooth:<base>,<amp>,<freq>   base + amp*sin(f*pi*x1)*cos(f*pi*x2)[*cos(f*pi*x3)]
///   bump:<base>,<amp>,<width>    base + amp*exp(-|x - center|^2 / (2 width^2)),
///                                center = (0.5, ..., 0.5)
ScalarSampler make_phantom(const std::string& spec, int dim = 2);

Field sample(const ScalarSampler& s, const Grid& g);

/// Build LameParameters from two phantom specs.
LameParameters make_lame(const std::string& lambda_spec, const std::string& mu_spec,
                         const Grid& g, double lower = 1e-6, double upper = 1e6);

/// Clamped multilinear extension of a scalar field, usable beyond its grid.
ScalarSampler field_sampler(const Field& f);

/// Catalog of polynomial displacement fields adapted to a constant-coefficient
/// guess at k = 0: rigid/linear modes plus the quadratic modes that solve the
/// homogeneous system exactly. Useful as a cheap "well-chosen-ish" boundary
/// family for sanity runs.
std::vector<Field> polynomial_solution_family(const Grid& g, double lambda0, double mu0,
                                              int count);

} // namespace lamerecon
