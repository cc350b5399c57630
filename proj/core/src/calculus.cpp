#include "lamerecon/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "lamerecon/errors.hpp"

namespace lamerecon {

namespace {

// One lane of one component along one axis. The line loop walks the grid in
// flat order with the axis stride, so it works for any axis and dimension.
void differentiate_lane(const double* in, double* out, const Grid& g, int axis,
                        int components, int lanes, int c, int lane, bool second) {
    const int n = g.extent(axis);
    const double h = g.spacing(axis);
    const std::size_t stride = g.stride(axis) * static_cast<std::size_t>(components * lanes);
    const double inv2h = 1.0 / (2.0 * h);
    const double invh2 = 1.0 / (h * h);

    const std::size_t npoints = g.point_count();
    const std::size_t offset = static_cast<std::size_t>(c * lanes + lane);
    for (std::size_t p = 0; p < npoints; ++p) {
        Index3 idx = g.unflat(p);
        const int i = idx[axis];
        const std::size_t base = p * components * lanes + offset;
        const double* f = in + base;
        double v;
        if (!second) {
            if (i == 0)
                v = (-3.0 * f[0] + 4.0 * f[stride] - f[2 * stride]) * inv2h;
            else if (i == n - 1)
                v = (3.0 * f[0] - 4.0 * *(f - stride) + *(f - 2 * stride)) * inv2h;
            else
                v = (f[stride] - *(f - stride)) * inv2h;
        } else {
            if (i == 0)
                v = (2.0 * f[0] - 5.0 * f[stride] + 4.0 * f[2 * stride] - f[3 * stride]) * invh2;
            else if (i == n - 1)
                v = (2.0 * f[0] - 5.0 * *(f - stride) + 4.0 * *(f - 2 * stride) - *(f - 3 * stride)) * invh2;
            else
                v = (f[stride] - 2.0 * f[0] + *(f - stride)) * invh2;
        }
        out[base] = v;
    }
}

Field differentiate(const Field& f, int axis, bool second) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim())
        throw ContractViolation("derivative: axis out of range");
    Field out(g, f.rank(), f.components(), f.is_complex());
    for (int c = 0; c < f.components(); ++c)
        for (int lane = 0; lane < f.lanes(); ++lane)
            differentiate_lane(f.values().data(), out.values().data(), g, axis,
                               f.components(), f.lanes(), c, lane, second);
    return out;
}

} // namespace

Field derivative(const Field& f, int axis) { return differentiate(f, axis, false); }

Field second_derivative(const Field& f, int a, int b) {
    if (a == b) return differentiate(f, a, true);
    Field dab = derivative(derivative(f, b), a);
    Field dba = derivative(derivative(f, a), b);
    return axpby(0.5, dab, 0.5, dba);
}

Field gradient(const Field& f) {
    if (f.rank() != Rank::scalar || f.components() != 1)
        throw ContractViolation("gradient: expects a scalar field");
    const Grid& g = f.grid();
    Field out(g, Rank::vector, g.dim(), f.is_complex());
    for (int a = 0; a < g.dim(); ++a) {
        Field da = derivative(f, a);
        for (std::size_t p = 0; p < g.point_count(); ++p)
            for (int lane = 0; lane < f.lanes(); ++lane)
                out.at(p, a, lane) = da.at(p, 0, lane);
    }
    return out;
}

Field divergence(const Field& v) {
    const Grid& g = v.grid();
    if (v.components() != g.dim())
        throw ContractViolation("divergence: components must equal grid dimension");
    Field out(g, Rank::scalar, 1, v.is_complex());
    for (int a = 0; a < g.dim(); ++a) {
        Field da = derivative(v.component(a), a);
        for (std::size_t p = 0; p < g.point_count(); ++p)
            for (int lane = 0; lane < v.lanes(); ++lane)
                out.at(p, 0, lane) += da.at(p, 0, lane);
    }
    return out;
}

Field sym_grad(const Field& u) {
    const Grid& g = u.grid();
    const int d = g.dim();
    if (u.components() != d)
        throw ContractViolation("sym_grad: components must equal grid dimension");
    Field out(g, Rank::matrix, d * d, u.is_complex());
    for (int j = 0; j < d; ++j) {
        Field uj = u.component(j);
        for (int a = 0; a < d; ++a) {
            Field da = derivative(uj, a);
            // contributes to S_aj and S_ja
            for (std::size_t p = 0; p < g.point_count(); ++p)
                for (int lane = 0; lane < u.lanes(); ++lane) {
                    double half = 0.5 * da.at(p, 0, lane);
                    out.at(p, a * d + j, lane) += half;
                    out.at(p, j * d + a, lane) += half;
                }
        }
    }
    return out;
}

Field second_derivatives(const Field& f) {
    if (f.rank() != Rank::scalar || f.components() != 1)
        throw ContractViolation("second_derivatives: expects a scalar field");
    const Grid& g = f.grid();
    const int d = g.dim();
    Field out(g, Rank::matrix, d * d, f.is_complex());
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            Field dab = second_derivative(f, a, b);
            for (std::size_t p = 0; p < g.point_count(); ++p)
                for (int lane = 0; lane < f.lanes(); ++lane) {
                    out.at(p, a * d + b, lane) = dab.at(p, 0, lane);
                    out.at(p, b * d + a, lane) = dab.at(p, 0, lane);
                }
        }
    return out;
}

Field axpby(double a, const Field& f, double b, const Field& g) {
    if (f.grid() != g.grid() || f.components() != g.components() ||
        f.is_complex() != g.is_complex())
        throw ContractViolation("axpby: field layout mismatch");
    Field out(f.grid(), f.rank(), f.components(), f.is_complex());
    for (std::size_t i = 0; i < f.value_count(); ++i)
        out.values()[i] = a * f.values()[i] + b * g.values()[i];
    return out;
}

double interpolate(const Field& f, const Point3& x, int c, int lane) {
    const Grid& g = f.grid();
    const int d = g.dim();
    Index3 i0{0, 0, 0};
    Point3 t{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
        double s = (x[a] - g.origin(a)) / g.spacing(a);
        s = std::clamp(s, 0.0, static_cast<double>(g.extent(a) - 1));
        int i = std::min(static_cast<int>(std::floor(s)), g.extent(a) - 2);
        i0[a] = i;
        t[a] = s - i;
    }
    double acc = 0.0;
    const int corners = 1 << d;
    for (int m = 0; m < corners; ++m) {
        double w = 1.0;
        Index3 idx = i0;
        for (int a = 0; a < d; ++a) {
            if (m & (1 << a)) {
                idx[a] += 1;
                w *= t[a];
            } else {
                w *= 1.0 - t[a];
            }
        }
        acc += w * f.at(g.flat(idx), c, lane);
    }
    return acc;
}

double discrete_c2_norm(const Field& f) {
    const Grid& g = f.grid();
    const int d = g.dim();
    std::vector<Field> firsts, seconds;
    for (int c = 0; c < f.components(); ++c) {
        Field fc = f.component(c);
        for (int a = 0; a < d; ++a) firsts.push_back(derivative(fc, a));
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) seconds.push_back(second_derivative(fc, a, b));
    }
    double best = 0.0;
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        double s = 0.0;
        for (int c = 0; c < f.components(); ++c)
            for (int lane = 0; lane < f.lanes(); ++lane) s += std::abs(f.at(p, c, lane));
        for (const Field& df : firsts)
            for (int lane = 0; lane < f.lanes(); ++lane) s += std::abs(df.at(p, 0, lane));
        for (const Field& df : seconds)
            for (int lane = 0; lane < f.lanes(); ++lane) s += std::abs(df.at(p, 0, lane));
        best = std::max(best, s);
    }
    return best;
}

} // namespace lamerecon
