#include "lamerecon/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "lamerecon/calculus.hpp"
#include "lamerecon/errors.hpp"

namespace lamerecon {

TransportSystem build_transport(const std::vector<FlatCombination>& vs, double k,
                                double cond_cap) {
    if (vs.empty()) throw ContractViolation("build_transport: no combinations");
    const Grid& g = vs[0].v.grid();
    const int d = g.dim();
    if (static_cast<int>(vs.size()) != d)
        throw ContractViolation("build_transport: need dim target combinations");
    for (const auto& fc : vs)
        if (fc.v.grid() != g) throw ContractViolation("build_transport: grid mismatch");

    TransportSystem sys(g);
    sys.k = k;
    for (int l = 0; l < d; ++l) {
        sys.beta.push_back(Field::vector(g));
        sys.gamma.push_back(Field::scalar(g));
        sys.rhs.push_back(Field::scalar(g));
    }

    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd gam(d), rst(d);
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        bool ok = true;
        for (const auto& fc : vs) ok = ok && fc.mask[p];
        for (int l = 0; l < d; ++l) {
            double gsum = 0.0;
            for (int a = 0; a < d; ++a) {
                double b = vs[l].v.at(p, a);
                sys.beta[l].at(p, a) = b;
                A(l, a) = b;
                gsum += vs[l].v.at(p, d + a);
            }
            sys.gamma[l].at(p) = gsum;
            sys.rhs[l].at(p) = vs[l].rstar.at(p);
            gam(l) = gsum;
            rst(l) = vs[l].rstar.at(p);
        }
        if (!ok) continue;

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        double smin = svd.singularValues()(d - 1);
        double smax = svd.singularValues()(0);
        double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
        sys.condA.at(p) = cond;
        if (!(cond <= cond_cap)) continue;

        Eigen::VectorXd Gam = svd.solve(gam);
        Eigen::VectorXd Phi = svd.solve(rst);
        bool finite = true;
        for (int a = 0; a < d; ++a)
            finite = finite && std::isfinite(Gam(a)) && std::isfinite(Phi(a));
        if (!finite) continue;
        for (int a = 0; a < d; ++a) {
            sys.Gamma.at(p, a) = Gam(a);
            sys.Phi.at(p, a) = -k * k * Phi(a);
        }
        sys.mask.set(p, true);
    }
    return sys;
}

namespace {

// all corners of the cell containing x must be mask-true
bool cell_masked(const TransportSystem& sys, const Point3& x) {
    const Grid& g = sys.grid;
    const int d = g.dim();
    Index3 i0{0, 0, 0};
    for (int a = 0; a < d; ++a) {
        double s = (x[a] - g.origin(a)) / g.spacing(a);
        if (s < -1e-9 || s > g.extent(a) - 1 + 1e-9) return false;
        i0[a] = std::clamp(static_cast<int>(std::floor(s)), 0, g.extent(a) - 2);
    }
    const int corners = 1 << d;
    for (int m = 0; m < corners; ++m) {
        Index3 idx = i0;
        for (int a = 0; a < d; ++a)
            if (m & (1 << a)) idx[a] += 1;
        if (!sys.mask[g.flat(idx)]) return false;
    }
    return true;
}

} // namespace

RayField integrate_ray(const TransportSystem& sys, const BoundaryScalar& boundary_mu,
                       const Point3& x0, double step_factor) {
    const Grid& g = sys.grid;
    const int d = g.dim();

    // anchor must sit on a boundary grid point (up to rounding)
    Index3 i0{0, 0, 0};
    for (int a = 0; a < d; ++a) {
        double s = (x0[a] - g.origin(a)) / g.spacing(a);
        i0[a] = std::clamp(static_cast<int>(std::lround(s)), 0, g.extent(a) - 1);
    }
    if (!g.on_boundary(i0))
        throw ContractViolation("integrate_ray: x0 is not a boundary point");
    const double mu0 = boundary_mu.value_at(g, i0);
    const Point3 start = g.point(i0);

    RayField out{Field::scalar(g), Mask(g), Mask(g)};
    const double hstep = step_factor * g.min_spacing();

    for (std::size_t p = 0; p < g.point_count(); ++p) {
        Point3 xt = g.point(p);
        double dist = 0.0;
        Point3 dir{0, 0, 0};
        for (int a = 0; a < d; ++a) {
            dir[a] = xt[a] - start[a];
            dist += dir[a] * dir[a];
        }
        dist = std::sqrt(dist);
        if (dist == 0.0) {
            out.mu.at(p) = mu0;
            out.set.set(p, true);
            continue;
        }
        const int nseg = std::max(1, static_cast<int>(std::ceil(dist / hstep)));
        const double dt = 1.0 / nseg;

        // trapezoidal accumulation of A(t) = int Gamma.psi' and of the
        // inhomogeneous integral with the integrating factor e^{A(s)}
        bool ok = true;
        double A = 0.0, I = 0.0;
        double prev_a = 0.0, prev_qe = 0.0;
        for (int s = 0; s <= nseg; ++s) {
            Point3 x;
            for (int a = 0; a < d; ++a) x[a] = start[a] + dir[a] * (dt * s);
            if (!cell_masked(sys, x)) {
                ok = false;
                break;
            }
            double adot = 0.0, q = 0.0;
            for (int a = 0; a < d; ++a) {
                adot += interpolate(sys.Gamma, x, a) * dir[a];
                q += interpolate(sys.Phi, x, a) * dir[a];
            }
            if (s > 0) A += 0.5 * dt * (prev_a + adot);
            double qe = q * std::exp(A);
            if (s > 0) I += 0.5 * dt * (prev_qe + qe);
            prev_a = adot;
            prev_qe = qe;
        }
        if (!ok) continue;
        double mu = std::exp(-A) * (mu0 + I);
        out.mu.at(p) = mu;
        out.set.set(p, true);
        if (!(mu > 0.0)) out.nonpositive.set(p, true);
    }
    return out;
}

namespace {

RecoveryResult recover_least_squares(const TransportSystem& sys,
                                     const BoundaryScalar& boundary_mu) {
    const Grid& g = sys.grid;
    const int d = g.dim();
    RecoveryResult out{Field::scalar(g), Mask(g), Mask(g), Mask(g), 0.0};

    // status per point: boundary values are known data; masked interior
    // points are unknowns
    std::vector<std::ptrdiff_t> unknown(g.point_count(), -1);
    std::vector<char> known(g.point_count(), 0);
    std::vector<std::size_t> unknown_points;
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (g.on_boundary(p)) {
            known[p] = 1;
            out.mu.at(p) = boundary_mu.value_at(g, g.unflat(p));
        }
    }

    // connected components of masked interior points over available
    // neighbors; drop components that never touch the boundary
    std::vector<char> anchored(g.point_count(), 0);
    {
        std::vector<char> seen(g.point_count(), 0);
        for (std::size_t p0 = 0; p0 < g.point_count(); ++p0) {
            if (seen[p0] || g.on_boundary(p0) || !sys.mask[p0]) continue;
            std::deque<std::size_t> queue{p0};
            std::vector<std::size_t> comp;
            bool touches = false;
            seen[p0] = 1;
            while (!queue.empty()) {
                std::size_t p = queue.front();
                queue.pop_front();
                comp.push_back(p);
                Index3 idx = g.unflat(p);
                for (int a = 0; a < d; ++a)
                    for (int s = -1; s <= 1; s += 2) {
                        Index3 nb = idx;
                        nb[a] += s;
                        if (nb[a] < 0 || nb[a] >= g.extent(a)) continue;
                        std::size_t q = g.flat(nb);
                        if (g.on_boundary(q)) {
                            touches = true;
                        } else if (sys.mask[q] && !seen[q]) {
                            seen[q] = 1;
                            queue.push_back(q);
                        }
                    }
            }
            for (std::size_t p : comp) {
                if (touches)
                    anchored[p] = 1;
                else
                    out.unreachable.set(p, true);
            }
        }
    }

    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (!g.on_boundary(p) && sys.mask[p] && anchored[p]) {
            unknown[p] = static_cast<std::ptrdiff_t>(unknown_points.size());
            unknown_points.push_back(p);
        }
    }
    if (unknown_points.empty()) return out;

    auto available = [&](const Index3& idx) {
        for (int a = 0; a < d; ++a)
            if (idx[a] < 0 || idx[a] >= g.extent(a)) return false;
        std::size_t q = g.flat(idx);
        return known[q] || unknown[q] >= 0;
    };

    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> rhs_rows;
    auto add_entry = [&](int row, std::size_t q, double w, double& rhs) {
        if (unknown[q] >= 0)
            trips.emplace_back(row, static_cast<int>(unknown[q]), w);
        else
            rhs -= w * out.mu.at(q);
    };

    int row = 0;
    for (std::size_t up = 0; up < unknown_points.size(); ++up) {
        const std::size_t p = unknown_points[up];
        const Index3 idx = g.unflat(p);
        for (int a = 0; a < d; ++a) {
            const double inv2h = 1.0 / (2.0 * g.spacing(a));
            Index3 plus = idx, minus = idx, plus2 = idx, minus2 = idx;
            plus[a] += 1;
            minus[a] -= 1;
            plus2[a] += 2;
            minus2[a] -= 2;
            double rhs = sys.Phi.at(p, a);
            bool have = false;
            if (available(plus) && available(minus)) {
                add_entry(row, g.flat(plus), inv2h, rhs);
                add_entry(row, g.flat(minus), -inv2h, rhs);
                have = true;
            } else if (available(plus) && available(plus2)) {
                add_entry(row, p, -3.0 * inv2h, rhs);
                add_entry(row, g.flat(plus), 4.0 * inv2h, rhs);
                add_entry(row, g.flat(plus2), -inv2h, rhs);
                have = true;
            } else if (available(minus) && available(minus2)) {
                add_entry(row, p, 3.0 * inv2h, rhs);
                add_entry(row, g.flat(minus), -4.0 * inv2h, rhs);
                add_entry(row, g.flat(minus2), inv2h, rhs);
                have = true;
            }
            if (!have) continue;
            add_entry(row, p, sys.Gamma.at(p, a), rhs);
            rhs_rows.push_back(rhs);
            ++row;
        }
    }

    const int n = static_cast<int>(unknown_points.size());
    Eigen::SparseMatrix<double> M(row, n);
    M.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd b(row);
    for (int r = 0; r < row; ++r) b(r) = rhs_rows[r];

    Eigen::SparseMatrix<double> N = Eigen::SparseMatrix<double>(M.transpose()) * M;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(N);
    if (ldlt.info() != Eigen::Success)
        throw SolverError("recover_global: least-squares factorization failed");
    Eigen::VectorXd x = ldlt.solve(M.transpose() * b);
    out.ls_residual = (M * x - b).norm();

    for (std::size_t up = 0; up < unknown_points.size(); ++up) {
        const std::size_t p = unknown_points[up];
        out.mu.at(p) = x(static_cast<Eigen::Index>(up));
        out.recovered.set(p, true);
        if (!(out.mu.at(p) > 0.0)) out.nonpositive.set(p, true);
    }
    for (std::size_t p = 0; p < g.point_count(); ++p)
        if (g.on_boundary(p)) out.recovered.set(p, true);
    return out;
}

RecoveryResult recover_ray(const TransportSystem& sys, const BoundaryScalar& boundary_mu) {
    const Grid& g = sys.grid;
    const int d = g.dim();
    RecoveryResult out{Field::scalar(g), Mask(g), Mask(g), Mask(g), 0.0};

    // subsample boundary sources: at most ~64 in 2D, ~192 in 3D
    std::vector<std::size_t> sources;
    for (std::size_t p = 0; p < g.point_count(); ++p)
        if (g.on_boundary(p)) sources.push_back(p);
    const std::size_t target = d == 2 ? 64 : 192;
    const std::size_t stride = std::max<std::size_t>(1, sources.size() / target);
    Field sum = Field::scalar(g);
    std::vector<int> count(g.point_count(), 0);

    for (std::size_t s = 0; s < sources.size(); s += stride) {
        RayField rf = integrate_ray(sys, boundary_mu, g.point(sources[s]));
        for (std::size_t p = 0; p < g.point_count(); ++p) {
            if (!rf.set[p]) continue;
            sum.at(p) += rf.mu.at(p);
            ++count[p];
        }
    }
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (g.on_boundary(p)) {
            out.mu.at(p) = boundary_mu.value_at(g, g.unflat(p));
            out.recovered.set(p, true);
            continue;
        }
        if (count[p] > 0) {
            out.mu.at(p) = sum.at(p) / count[p];
            out.recovered.set(p, true);
            if (!(out.mu.at(p) > 0.0)) out.nonpositive.set(p, true);
        } else if (sys.mask[p]) {
            out.unreachable.set(p, true);
        }
    }
    return out;
}

} // namespace

RecoveryResult recover_global(const TransportSystem& sys, const BoundaryScalar& boundary_mu,
                              RecoveryMode mode) {
    if (mode == RecoveryMode::least_squares) return recover_least_squares(sys, boundary_mu);
    return recover_ray(sys, boundary_mu);
}

} // namespace lamerecon
