#pragma once

#include <memory>
#include <optional>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "lamerecon/lame.hpp"

namespace lamerecon {

/// Discretized Dirichlet problem for the isotropic elasticity system
///   div(lambda (div u) I + 2 mu S(grad u)) + k^2 u = body   in the interior,
///   u = g                                                   on the boundary,
/// in the expanded (non-divergence) form with second-order central stencils.
/// Unknowns are interior points in flat grid order, components interleaved.
struct LinearSystem {
    Grid grid;
    int dim;
    double k;
    Eigen::SparseMatrix<double> matrix;
    Eigen::VectorXd rhs;
    std::vector<std::ptrdiff_t> interior_rank; // -1 on boundary points
    BoundaryData boundary;
};

LinearSystem assemble(const LameParameters& params, double k, const BoundaryData& g,
                      const Field* body_force = nullptr);

struct SolveReport {
    double condition_estimate = 0.0;
};

/// Sparse LU factorization of an assembled system, with a Hager-style
/// 1-norm condition estimate. Also usable for repeated solves.
class FactorizedSystem {
public:
    explicit FactorizedSystem(const LinearSystem& system);
    ~FactorizedSystem();
    FactorizedSystem(FactorizedSystem&&) noexcept;

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
    Eigen::VectorXd solve_adjoint(const Eigen::VectorXd& rhs) const;
    double condition_estimate() const;
    const LinearSystem& system() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Factorize, check conditioning, solve, and reattach the Dirichlet values.
/// Throws SolverError if the factorization fails or the condition estimate
/// exceeds `cond_cap` (the frequency k may be an eigenvalue).
Field solve(const LinearSystem& system, SolveReport* report = nullptr,
            double cond_cap = 1e12);

/// Pointwise evaluation of the discrete operator on interior points
/// (zero on the boundary). Exactly the discretization used by assemble,
/// so residual(solve(assemble(...))) returns the body force to solver
/// precision. Accepts real or complex u.
Field residual(const Field& u, const LameParameters& params, double k);

} // namespace lamerecon
