#include "lamerecon/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "lamerecon/calculus.hpp"
#include "lamerecon/errors.hpp"

namespace lamerecon {

void ReductionBundle::append(const ReductionBundle& other) {
    if (other.variant != variant || other.dim != dim || other.grid != grid)
        throw ContractViolation("ReductionBundle::append: incompatible bundles");
    sharp.insert(sharp.end(), other.sharp.begin(), other.sharp.end());
    flat.insert(flat.end(), other.flat.begin(), other.flat.end());
    star.insert(star.end(), other.star.begin(), other.star.end());
    labels.insert(labels.end(), other.labels.begin(), other.labels.end());
}

namespace {

// The flat-slot scalars c_m, m = 0..dim-1. In 2D these are a+b and a-b; in
// 3D they are b_{23}, b_{13}, b_{12} with
//   b_{ij} = d_l u_l - d_i u_i - d_j u_j + (d_i u_l + d_l u_i) + (d_j u_l + d_l u_j),
// l the index complementary to {i, j}. Equivalently c_m = (sum_a d_a) u_m
// + d_m (sum_a u_a) - div u; the explicit form below keeps the convention
// visible.
std::vector<Field> flat_scalars(const Field& u) {
    const Grid& g = u.grid();
    const int d = g.dim();
    std::vector<Field> dus; // dus[a*d + j] = d_a u_j
    for (int a = 0; a < d; ++a)
        for (int j = 0; j < d; ++j) dus.push_back(derivative(u.component(j), a));
    auto du = [&](int a, int j) -> const Field& { return dus[a * d + j]; };

    std::vector<Field> cs;
    if (d == 2) {
        Field a_f = axpby(1.0, du(1, 0), 1.0, du(0, 1)); // a = d2 u1 + d1 u2
        Field b_f = axpby(1.0, du(0, 0), -1.0, du(1, 1)); // b = d1 u1 - d2 u2
        cs.push_back(axpby(1.0, a_f, 1.0, b_f));
        cs.push_back(axpby(1.0, a_f, -1.0, b_f));
    } else {
        for (int l = 0; l < 3; ++l) {
            const int i = (l + 1) % 3, j = (l + 2) % 3;
            Field c = Field::scalar(g, u.is_complex());
            for (std::size_t p = 0; p < g.point_count(); ++p)
                for (int lane = 0; lane < u.lanes(); ++lane)
                    c.at(p, 0, lane) = du(l, l).at(p, 0, lane) - du(i, i).at(p, 0, lane) -
                                       du(j, j).at(p, 0, lane) + du(i, l).at(p, 0, lane) +
                                       du(l, i).at(p, 0, lane) + du(j, l).at(p, 0, lane) +
                                       du(l, j).at(p, 0, lane);
            cs.push_back(std::move(c));
        }
    }
    return cs;
}

Field sum_components(const Field& u) {
    Field s = Field::scalar(u.grid(), u.is_complex());
    for (std::size_t p = 0; p < u.grid().point_count(); ++p)
        for (int lane = 0; lane < u.lanes(); ++lane) {
            double acc = 0.0;
            for (int c = 0; c < u.components(); ++c) acc += u.at(p, c, lane);
            s.at(p, 0, lane) = acc;
        }
    return s;
}

ReductionBundle reduce_impl(Variant v, const Field& u, const std::string& label) {
    const Grid& g = u.grid();
    const int d = g.dim();
    if (u.components() != d)
        throw ContractViolation("reduce: u must have dim components");

    Field div_u = divergence(u);
    std::vector<Field> grad_div;
    for (int a = 0; a < d; ++a) grad_div.push_back(derivative(div_u, a));
    std::vector<Field> cs = flat_scalars(u);
    std::vector<Field> dcs;
    for (int m = 0; m < d; ++m) dcs.push_back(derivative(cs[m], m));

    ReductionBundle b{v, d, g, 0.0, {}, {}, {}, {}};
    Field sharp(g, Rank::other, 2 * d, u.is_complex());
    Field flat(g, Rank::other, 2 * d, u.is_complex());

    auto fill = [&](Field& dst, int slot, const Field& src) {
        for (std::size_t p = 0; p < g.point_count(); ++p)
            for (int lane = 0; lane < u.lanes(); ++lane)
                dst.at(p, slot, lane) = src.at(p, 0, lane);
    };

    if (v == Variant::mu) {
        for (int a = 0; a < d; ++a) fill(sharp, a, grad_div[a]);
        for (int a = 0; a < d; ++a) fill(sharp, d + a, div_u);
        for (int m = 0; m < d; ++m) fill(flat, m, cs[m]);
        for (int m = 0; m < d; ++m) fill(flat, d + m, dcs[m]);
    } else {
        for (int a = 0; a < d; ++a) fill(sharp, a, div_u);
        for (int m = 0; m < d; ++m) fill(sharp, d + m, cs[m]);
        for (int a = 0; a < d; ++a) fill(flat, a, grad_div[a]);
        for (int m = 0; m < d; ++m) fill(flat, d + m, dcs[m]);
    }

    b.sharp.push_back(std::move(sharp));
    b.flat.push_back(std::move(flat));
    b.star.push_back(sum_components(u));
    b.labels.push_back(label);
    b.sharp.back().require_finite("reduce: sharp");
    b.flat.back().require_finite("reduce: flat");
    return b;
}

} // namespace

ReductionBundle reduce_mu(const Field& u, const std::string& label) {
    return reduce_impl(Variant::mu, u, label);
}

ReductionBundle reduce_lambda(const Field& u, const std::string& label) {
    return reduce_impl(Variant::lambda, u, label);
}

ReductionBundle reduce(Variant v, const std::vector<Field>& us, double k) {
    if (us.empty()) throw ContractViolation("reduce: no solutions");
    ReductionBundle b = reduce_impl(v, us[0], "u0");
    for (std::size_t j = 1; j < us.size(); ++j)
        b.append(reduce_impl(v, us[j], "u" + std::to_string(j)));
    b.k = k;
    return b;
}

std::vector<int> distinct_sharp_rows(Variant v, int dim) {
    if (v == Variant::mu) {
        // gradient entries are distinct, the div copies collapse to one
        std::vector<int> rows;
        for (int a = 0; a < dim; ++a) rows.push_back(a);
        rows.push_back(dim);
        return rows;
    }
    // lambda: div copies collapse, the c_m entries are distinct
    std::vector<int> rows{0};
    for (int m = 0; m < dim; ++m) rows.push_back(dim + m);
    return rows;
}

int basis_count(int dim) { return dim + 1; }

int target_count(Variant v, int dim) { return v == Variant::mu ? dim : 1; }

Field identity_residual(const ReductionBundle& bundle, const LameParameters& params,
                        double k, int solution_index) {
    const Grid& g = bundle.grid;
    if (params.grid() != g)
        throw ContractViolation("identity_residual: grid mismatch");
    const int d = bundle.dim;

    // F and G from the true parameters (test oracle only)
    Field lam_mu = axpby(1.0, params.lambda(), 1.0, params.mu());
    Field grad_lam_mu = gradient(lam_mu);
    Field grad_mu = gradient(params.mu());

    auto eval_lane = [&](std::size_t j, std::size_t p, int lane) {
        const Field& sh = bundle.sharp[j];
        const Field& fl = bundle.flat[j];
        double acc = 0.0;
        if (bundle.variant == Variant::mu) {
            for (int a = 0; a < d; ++a) {
                acc += sh.at(p, a, lane) * lam_mu.at(p);
                acc += sh.at(p, d + a, lane) * grad_lam_mu.at(p, a);
                acc += fl.at(p, a, lane) * grad_mu.at(p, a);
                acc += fl.at(p, d + a, lane) * params.mu().at(p);
            }
        } else {
            for (int a = 0; a < d; ++a) {
                acc += sh.at(p, a, lane) * grad_lam_mu.at(p, a);
                acc += sh.at(p, d + a, lane) * grad_mu.at(p, a);
                acc += fl.at(p, a, lane) * lam_mu.at(p);
                acc += fl.at(p, d + a, lane) * params.mu().at(p);
            }
        }
        acc += k * k * bundle.star[j].at(p, 0, lane);
        return acc;
    };

    Field out = Field::scalar(g);
    if (solution_index >= 0) {
        const auto j = static_cast<std::size_t>(solution_index);
        if (j >= bundle.solution_count())
            throw ContractViolation("identity_residual: solution index out of range");
        const bool cplx = bundle.sharp[j].is_complex();
        for (std::size_t p = 0; p < g.point_count(); ++p) {
            if (!cplx)
                out.at(p) = eval_lane(j, p, 0);
            else
                out.at(p) = std::max(std::abs(eval_lane(j, p, 0)),
                                     std::abs(eval_lane(j, p, 1)));
        }
    } else {
        for (std::size_t j = 0; j < bundle.solution_count(); ++j)
            for (std::size_t p = 0; p < g.point_count(); ++p)
                for (int lane = 0; lane < bundle.sharp[j].lanes(); ++lane)
                    out.at(p) = std::max(out.at(p), std::abs(eval_lane(j, p, lane)));
    }
    return out;
}

} // namespace lamerecon
