#include "lamerecon/elimination.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "lamerecon/errors.hpp"

namespace lamerecon {

namespace {

// Next k-subset of {0..n-1} in lexicographic order; returns false when done.
bool next_subset(std::vector<int>& sub, int n) {
    const int k = static_cast<int>(sub.size());
    for (int i = k - 1; i >= 0; --i) {
        if (sub[i] < n - (k - i)) {
            ++sub[i];
            for (int j = i + 1; j < k; ++j) sub[j] = sub[j - 1] + 1;
            return true;
        }
    }
    return false;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

EliminationPlan independence_map(const ReductionBundle& bundle,
                                 const std::vector<int>& excluded_targets,
                                 const EliminationOptions& opts) {
    const Grid& g = bundle.grid;
    const int bc = basis_count(bundle.dim);
    const std::vector<int> rows = distinct_sharp_rows(bundle.variant, bundle.dim);

    std::vector<int> candidates;
    for (int j = 0; j < static_cast<int>(bundle.solution_count()); ++j)
        if (std::find(excluded_targets.begin(), excluded_targets.end(), j) ==
            excluded_targets.end())
            candidates.push_back(j);
    if (static_cast<int>(candidates.size()) < bc)
        throw ContractViolation("independence_map: too few solutions (need >= " +
                                std::to_string(bc) + " basis candidates)");

    EliminationPlan plan(g, bc);
    plan.variant = bundle.variant;
    plan.dim = bundle.dim;
    plan.basis_count = bc;
    plan.candidates = candidates;

    // threshold scale: median norm of the distinct sharp vectors
    {
        std::vector<double> norms;
        norms.reserve(g.point_count() * candidates.size());
        for (int j : candidates) {
            const Field& sh = bundle.sharp[j];
            for (std::size_t p = 0; p < g.point_count(); ++p) {
                double s = 0.0;
                for (int r : rows) {
                    double v = sh.at(p, r, 0);
                    s += v * v;
                    if (sh.is_complex()) {
                        double w = sh.at(p, r, 1);
                        s += w * w;
                    }
                }
                norms.push_back(std::sqrt(s));
            }
        }
        auto mid = norms.begin() + norms.size() / 2;
        std::nth_element(norms.begin(), mid, norms.end());
        plan.threshold_abs = opts.sigma_rel_threshold * *mid;
    }

    const bool enumerate_all =
        binom(static_cast<int>(candidates.size()), bc) <= opts.subset_cap;

    Eigen::MatrixXd B(bc, bc);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd;
    auto column_of = [&](int j, std::size_t p, int col, Eigen::MatrixXd& M) {
        const Field& sh = bundle.sharp[j];
        for (int r = 0; r < bc; ++r) M(r, col) = sh.at(p, rows[r], 0);
    };

    for (std::size_t p = 0; p < g.point_count(); ++p) {
        double best_sigma = -1.0;
        std::vector<int> best(bc, -1);
        if (enumerate_all) {
            std::vector<int> sub(bc);
            for (int i = 0; i < bc; ++i) sub[i] = i;
            do {
                for (int c = 0; c < bc; ++c) column_of(candidates[sub[c]], p, c, B);
                svd.compute(B);
                double s = svd.singularValues()(bc - 1);
                if (s > best_sigma) {
                    best_sigma = s;
                    for (int c = 0; c < bc; ++c) best[c] = candidates[sub[c]];
                }
            } while (next_subset(sub, static_cast<int>(candidates.size())));
        } else {
            // greedy column-pivoted pick: repeatedly take the candidate with
            // the largest residual against the span of those already chosen
            Eigen::MatrixXd chosen(bc, bc);
            std::vector<int> taken;
            std::vector<char> used(candidates.size(), 0);
            Eigen::MatrixXd Q(bc, 0);
            for (int step = 0; step < bc; ++step) {
                int pick = -1;
                double best_res = -1.0;
                Eigen::VectorXd col(bc);
                for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
                    if (used[ci]) continue;
                    Eigen::MatrixXd tmp(bc, 1);
                    column_of(candidates[ci], p, 0, tmp);
                    Eigen::VectorXd v = tmp.col(0);
                    if (Q.cols() > 0) v -= Q * (Q.transpose() * v);
                    double r = v.norm();
                    if (r > best_res) {
                        best_res = r;
                        pick = static_cast<int>(ci);
                        col = v;
                    }
                }
                used[pick] = 1;
                taken.push_back(candidates[pick]);
                if (best_res > 0.0) {
                    Q.conservativeResize(bc, Q.cols() + 1);
                    Q.col(Q.cols() - 1) = col / best_res;
                }
            }
            std::sort(taken.begin(), taken.end());
            for (int c = 0; c < bc; ++c) column_of(taken[c], p, c, B);
            svd.compute(B);
            best_sigma = svd.singularValues()(bc - 1);
            best = taken;
        }
        plan.sigma_min.at(p) = best_sigma;
        plan.mask.set(p, best_sigma >= plan.threshold_abs);
        for (int c = 0; c < bc; ++c)
            plan.selection[p * bc + c] = static_cast<std::int32_t>(best[c]);
    }
    return plan;
}

ThetaField solve_theta(const EliminationPlan& plan, const ReductionBundle& bundle,
                       int target_index) {
    const Grid& g = bundle.grid;
    const int bc = plan.basis_count;
    const std::vector<int> rows = distinct_sharp_rows(bundle.variant, bundle.dim);
    if (target_index < 0 || target_index >= static_cast<int>(bundle.solution_count()))
        throw ContractViolation("solve_theta: target index out of range");

    ThetaField out{Field::multi(g, bc), plan.mask, 0.0, target_index};
    const Field& target = bundle.sharp[target_index];

    Eigen::MatrixXd B(bc, bc);
    Eigen::VectorXd t(bc);
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (!plan.mask[p]) continue;
        for (int c = 0; c < bc; ++c) {
            const Field& sh = bundle.sharp[plan.selection[p * bc + c]];
            for (int r = 0; r < bc; ++r) B(r, c) = sh.at(p, rows[r], 0);
        }
        for (int r = 0; r < bc; ++r) t(r) = target.at(p, rows[r], 0);
        Eigen::VectorXd theta = Eigen::FullPivLU<Eigen::MatrixXd>(B).solve(-t);
        for (int c = 0; c < bc; ++c) out.theta.at(p, c) = theta(c);
        double tn = t.norm();
        if (tn > 0.0) {
            double res = (B * theta + t).norm() / tn;
            out.max_rel_residual = std::max(out.max_rel_residual, res);
        }
    }
    return out;
}

FlatCombination combine_flat(const EliminationPlan& plan, const ReductionBundle& bundle,
                             const ThetaField& theta, int target_index) {
    const Grid& g = bundle.grid;
    const int bc = plan.basis_count;
    const int nc = 2 * bundle.dim;
    FlatCombination out{Field::multi(g, nc), Field::scalar(g), plan.mask};

    const Field& tf = bundle.flat[target_index];
    const Field& ts = bundle.star[target_index];
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        if (!plan.mask[p]) continue;
        for (int c = 0; c < nc; ++c) out.v.at(p, c) = tf.at(p, c, 0);
        out.rstar.at(p) = ts.at(p, 0, 0);
        for (int b = 0; b < bc; ++b) {
            const double th = theta.theta.at(p, b);
            const int j = plan.selection[p * bc + b];
            const Field& fl = bundle.flat[j];
            for (int c = 0; c < nc; ++c) out.v.at(p, c) += th * fl.at(p, c, 0);
            out.rstar.at(p) += th * bundle.star[j].at(p, 0, 0);
        }
    }
    return out;
}

} // namespace lamerecon
