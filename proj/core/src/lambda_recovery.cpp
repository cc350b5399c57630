#include "lamerecon/lambda_recovery.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "lamerecon/errors.hpp"

namespace lamerecon {

KappaSigma compute_kappa_sigma(const FlatCombination& v, int dim, double eps_rel) {
    const Grid& g = v.v.grid();
    if (v.v.components() != 2 * dim)
        throw ContractViolation("compute_kappa_sigma: v must have 2*dim components");
    KappaSigma ks{Field::scalar(g), Field::scalar(g), Field::scalar(g), Mask(g), 0.0};

    std::vector<double> vnorms;
    vnorms.reserve(g.point_count());
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        double kap = 0.0, tot = 0.0, n2 = 0.0;
        for (int c = 0; c < 2 * dim; ++c) {
            double val = v.v.at(p, c);
            if (c < dim) kap += val;
            tot += val;
            n2 += val * val;
        }
        ks.kappa.at(p) = kap;
        ks.sigma.at(p) = -tot;
        ks.rhs_star.at(p) = v.rstar.at(p);
        if (v.mask[p]) vnorms.push_back(std::sqrt(n2));
    }
    if (!vnorms.empty()) {
        auto mid = vnorms.begin() + vnorms.size() / 2;
        std::nth_element(vnorms.begin(), mid, vnorms.end());
        ks.eps_kappa = eps_rel * *mid;
    }
    for (std::size_t p = 0; p < g.point_count(); ++p)
        ks.mask.set(p, v.mask[p] && std::abs(ks.kappa.at(p)) >= ks.eps_kappa &&
                           ks.eps_kappa > 0.0);
    return ks;
}

LambdaResult recover_lambda(const KappaSigma& ks, const Field& mu, double k) {
    const Grid& g = ks.kappa.grid();
    if (mu.grid() != g || mu.components() != 1 || mu.is_complex())
        throw ContractViolation("recover_lambda: mu must be a real scalar field on the grid");
    LambdaResult out{Field::scalar(g), ks.mask, Mask(g)};
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (!ks.mask[p]) continue;
        if (!(mu.at(p) > 0.0))
            throw ContractViolation("recover_lambda: mu must be positive on the mask");
        double kap = ks.kappa.at(p);
        double lam = ks.sigma.at(p) * mu.at(p) / kap - (k * k / kap) * ks.rhs_star.at(p);
        out.lambda.at(p) = lam;
        if (!(lam > 0.0)) out.negative.set(p, true);
    }
    return out;
}

Field inpaint_harmonic(const Field& f, const Mask& known) {
    const Grid& g = f.grid();
    if (f.components() != 1 || f.is_complex())
        throw ContractViolation("inpaint_harmonic: expects a real scalar field");
    Field out = f;

    std::vector<std::ptrdiff_t> unknown(g.point_count(), -1);
    std::vector<std::size_t> pts;
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (!known[p]) {
            unknown[p] = static_cast<std::ptrdiff_t>(pts.size());
            pts.push_back(p);
        }
    }
    if (pts.empty()) return out;

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t r = 0; r < pts.size(); ++r) {
        const std::size_t p = pts[r];
        const Index3 idx = g.unflat(p);
        double diag = 0.0;
        for (int a = 0; a < g.dim(); ++a)
            for (int s = -1; s <= 1; s += 2) {
                Index3 nb = idx;
                nb[a] += s;
                if (nb[a] < 0 || nb[a] >= g.extent(a)) continue; // zero-Neumann
                std::size_t q = g.flat(nb);
                diag += 1.0;
                if (unknown[q] >= 0)
                    trips.emplace_back(static_cast<int>(r), static_cast<int>(unknown[q]), -1.0);
                else
                    b(static_cast<Eigen::Index>(r)) += out.at(q);
            }
        trips.emplace_back(static_cast<int>(r), static_cast<int>(r), diag);
    }
    Eigen::SparseMatrix<double> L(static_cast<int>(pts.size()), static_cast<int>(pts.size()));
    L.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
    if (ldlt.info() != Eigen::Success)
        throw SolverError("inpaint_harmonic: factorization failed");
    Eigen::VectorXd x = ldlt.solve(b);
    for (std::size_t r = 0; r < pts.size(); ++r) out.at(pts[r]) = x(static_cast<Eigen::Index>(r));
    return out;
}

} // namespace lamerecon
