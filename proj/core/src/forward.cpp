#include "lamerecon/forward.hpp"

#include <cmath>
#include <vector>

#include "lamerecon/calculus.hpp"
#include "lamerecon/errors.hpp"

namespace lamerecon {

namespace {

// Enumerates the stencil of the expanded operator
//   (lambda+mu) grad(div u) + mu Lap(u) + (grad lambda)(div u)
//   + 2 S(grad u) grad(mu) + k^2 u
// at an interior point, as (flat neighbor, component, weight) triples.
// Shared by assembly and the residual oracle so the two stay identical.
template <typename Emit>
void expanded_operator_stencil(const Grid& g, int dim, std::size_t p, const Index3& idx,
                               int i, double lam, double mu, const double* glam,
                               const double* gmu, double k, Emit&& emit) {
    const std::size_t flat = g.flat(idx);
    (void)p;
    // mu * Laplacian(u_i) and (lambda+mu) d_i d_i u_i share the straight
    // second-difference along each axis
    for (int a = 0; a < dim; ++a) {
        const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
        double w = mu * inv_h2;
        if (a == i) w += (lam + mu) * inv_h2;
        emit(flat + g.stride(a), i, w);
        emit(flat - g.stride(a), i, w);
        emit(flat, i, -2.0 * w);
    }
    // (lambda+mu) d_i d_j u_j, j != i: central cross stencil
    for (int j = 0; j < dim; ++j) {
        if (j == i) continue;
        const double w = (lam + mu) / (4.0 * g.spacing(i) * g.spacing(j));
        emit(flat + g.stride(i) + g.stride(j), j, w);
        emit(flat - g.stride(i) - g.stride(j), j, w);
        emit(flat + g.stride(i) - g.stride(j), j, -w);
        emit(flat - g.stride(i) + g.stride(j), j, -w);
    }
    // (grad lambda)_i * div u
    for (int j = 0; j < dim; ++j) {
        const double w = glam[i] / (2.0 * g.spacing(j));
        emit(flat + g.stride(j), j, w);
        emit(flat - g.stride(j), j, -w);
    }
    // sum_j (d_i u_j + d_j u_i) (grad mu)_j
    for (int j = 0; j < dim; ++j) {
        const double wi = gmu[j] / (2.0 * g.spacing(i));
        emit(flat + g.stride(i), j, wi);
        emit(flat - g.stride(i), j, -wi);
        const double wj = gmu[j] / (2.0 * g.spacing(j));
        emit(flat + g.stride(j), i, wj);
        emit(flat - g.stride(j), i, -wj);
    }
    emit(flat, i, k * k);
}

} // namespace

LinearSystem assemble(const LameParameters& params, double k, const BoundaryData& g,
                      const Field* body_force) {
    const Grid& grid = params.grid();
    const int dim = grid.dim();
    if (g.grid() != grid)
        throw ContractViolation("assemble: boundary data grid mismatch");
    if (g.components() != dim)
        throw ContractViolation("assemble: boundary data components must equal dim");
    if (k < 0.0)
        throw ContractViolation("assemble: k must be >= 0");
    if (body_force) {
        if (body_force->grid() != grid || body_force->components() != dim ||
            body_force->is_complex())
            throw ContractViolation("assemble: body force layout mismatch");
    }

    LinearSystem sys{grid, dim, k, {}, {}, {}, g};
    sys.interior_rank.assign(grid.point_count(), -1);
    std::ptrdiff_t n_interior = 0;
    for (std::size_t p = 0; p < grid.point_count(); ++p)
        if (!grid.on_boundary(p)) sys.interior_rank[p] = n_interior++;

    const std::ptrdiff_t n = n_interior * dim;
    sys.rhs = Eigen::VectorXd::Zero(n);

    Field glam = gradient(params.lambda());
    Field gmu = gradient(params.mu());

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * (6 * dim + 3));

    for (std::size_t p = 0; p < grid.point_count(); ++p) {
        if (sys.interior_rank[p] < 0) continue;
        Index3 idx = grid.unflat(p);
        double gl[3], gm[3];
        for (int a = 0; a < dim; ++a) {
            gl[a] = glam.at(p, a);
            gm[a] = gmu.at(p, a);
        }
        const double lam = params.lambda().at(p);
        const double mu = params.mu().at(p);
        for (int i = 0; i < dim; ++i) {
            const std::ptrdiff_t row = sys.interior_rank[p] * dim + i;
            if (body_force) sys.rhs[row] += body_force->at(p, i);
            expanded_operator_stencil(
                grid, dim, p, idx, i, lam, mu, gl, gm, k,
                [&](std::size_t q, int j, double w) {
                    std::ptrdiff_t qr = sys.interior_rank[q];
                    if (qr >= 0) {
                        triplets.emplace_back(static_cast<int>(row),
                                              static_cast<int>(qr * dim + j), w);
                    } else {
                        sys.rhs[row] -= w * g.at(g.boundary_rank(q), j);
                    }
                });
        }
    }
    sys.matrix.resize(static_cast<int>(n), static_cast<int>(n));
    sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
    sys.matrix.makeCompressed();
    return sys;
}

struct FactorizedSystem::Impl {
    const LinearSystem* system;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    mutable double cond = -1.0;
};

FactorizedSystem::FactorizedSystem(const LinearSystem& system) : impl_(new Impl) {
    impl_->system = &system;
    impl_->lu.compute(system.matrix);
    if (impl_->lu.info() != Eigen::Success)
        throw SolverError("elasticity factorization failed: k may be an eigenvalue "
                          "of the system");
}

FactorizedSystem::~FactorizedSystem() = default;
FactorizedSystem::FactorizedSystem(FactorizedSystem&&) noexcept = default;

Eigen::VectorXd FactorizedSystem::solve(const Eigen::VectorXd& rhs) const {
    return impl_->lu.solve(rhs);
}

Eigen::VectorXd FactorizedSystem::solve_adjoint(const Eigen::VectorXd& rhs) const {
    return impl_->lu.adjoint().solve(rhs);
}

const LinearSystem& FactorizedSystem::system() const { return *impl_->system; }

double FactorizedSystem::condition_estimate() const {
    if (impl_->cond >= 0.0) return impl_->cond;
    const auto& A = impl_->system->matrix;
    const Eigen::Index n = A.rows();
    // ||A||_1 exactly
    double norm_a = 0.0;
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
        double s = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it)
            s += std::abs(it.value());
        norm_a = std::max(norm_a, s);
    }
    // Hager's estimator for ||A^-1||_1
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        Eigen::VectorXd y = solve(x);
        est = y.lpNorm<1>();
        Eigen::VectorXd xi(n);
        for (Eigen::Index i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        Eigen::VectorXd z = solve_adjoint(xi);
        Eigen::Index jmax = 0;
        double zmax = z.cwiseAbs().maxCoeff(&jmax);
        if (zmax <= z.dot(x)) break;
        x.setZero();
        x[jmax] = 1.0;
    }
    impl_->cond = norm_a * est;
    return impl_->cond;
}

Field solve(const LinearSystem& system, SolveReport* report, double cond_cap) {
    FactorizedSystem fact(system);
    double cond = fact.condition_estimate();
    if (report) report->condition_estimate = cond;
    if (cond > cond_cap)
        throw SolverError("elasticity system too ill-conditioned (estimate " +
                          std::to_string(cond) + "): k may be an eigenvalue");
    Eigen::VectorXd x = fact.solve(system.rhs);

    Field u = Field::vector(system.grid);
    for (std::size_t p = 0; p < system.grid.point_count(); ++p) {
        std::ptrdiff_t r = system.interior_rank[p];
        if (r >= 0) {
            for (int i = 0; i < system.dim; ++i) u.at(p, i) = x[r * system.dim + i];
        } else {
            std::size_t br = system.boundary.boundary_rank(p);
            for (int i = 0; i < system.dim; ++i) u.at(p, i) = system.boundary.at(br, i);
        }
    }
    u.require_finite("forward solution");
    return u;
}

Field residual(const Field& u, const LameParameters& params, double k) {
    const Grid& grid = params.grid();
    const int dim = grid.dim();
    if (u.grid() != grid)
        throw ContractViolation("residual: grid mismatch");
    if (u.components() != dim)
        throw ContractViolation("residual: u must have dim components");

    Field glam = gradient(params.lambda());
    Field gmu = gradient(params.mu());
    Field out(grid, Rank::vector, dim, u.is_complex());

    for (std::size_t p = 0; p < grid.point_count(); ++p) {
        if (grid.on_boundary(p)) continue;
        Index3 idx = grid.unflat(p);
        double gl[3], gm[3];
        for (int a = 0; a < dim; ++a) {
            gl[a] = glam.at(p, a);
            gm[a] = gmu.at(p, a);
        }
        const double lam = params.lambda().at(p);
        const double mu = params.mu().at(p);
        for (int i = 0; i < dim; ++i)
            for (int lane = 0; lane < u.lanes(); ++lane) {
                double acc = 0.0;
                expanded_operator_stencil(grid, dim, p, idx, i, lam, mu, gl, gm, k,
                                          [&](std::size_t q, int j, double w) {
                                              acc += w * u.at(q, j, lane);
                                          });
                out.at(p, i, lane) = acc;
            }
    }
    return out;
}

} // namespace lamerecon
