#include "lamerecon/phantoms.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lamerecon/calculus.hpp"
#include "lamerecon/errors.hpp"

namespace lamerecon {

namespace {

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

} // namespace

ScalarSampler make_phantom(const std::string& spec, int dim) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::vector<double> par =
        colon == std::string::npos ? std::vector<double>{} : parse_params(spec.substr(colon + 1));
    constexpr double pi = std::numbers::pi;

    if (name == "constant") {
        if (par.size() != 1) throw ContractViolation("phantom constant:<v>");
        double v = par[0];
        return [v](const Point3&) { return v; };
    }
    if (name == "smooth") {
        if (par.size() != 3) throw ContractViolation("phantom smooth:<base>,<amp>,<freq>");
        double base = par[0], amp = par[1], f = par[2];
        return [base, amp, f, pi](const Point3& x) {
            return base + amp * std::sin(f * pi * x[0]) * std::cos(f * pi * x[1]) *
                              std::cos(f * pi * x[2]);
        };
    }
    if (name == "bump") {
        if (par.size() != 3) throw ContractViolation("phantom bump:<base>,<amp>,<width>");
        double base = par[0], amp = par[1], w = par[2];
        return [base, amp, w, dim](const Point3& x) {
            double r2 = 0.0;
            for (int a = 0; a < dim; ++a) {
                double d = x[a] - 0.5;
                r2 += d * d;
            }
            return base + amp * std::exp(-r2 / (2.0 * w * w));
        };
    }
    throw ContractViolation("unknown phantom spec: " + spec);
}

Field sample(const ScalarSampler& s, const Grid& g) {
    Field f = Field::scalar(g);
    for (std::size_t p = 0; p < g.point_count(); ++p) f.at(p) = s(g.point(p));
    return f;
}

LameParameters make_lame(const std::string& lambda_spec, const std::string& mu_spec,
                         const Grid& g, double lower, double upper) {
    return LameParameters(sample(make_phantom(lambda_spec, g.dim()), g),
                          sample(make_phantom(mu_spec, g.dim()), g), lower, upper);
}

ScalarSampler field_sampler(const Field& f) {
    if (f.components() != 1 || f.is_complex())
        throw ContractViolation("field_sampler: expects a real scalar field");
    return [f](const Point3& x) { return interpolate(f, x); };
}

namespace {

using PolyFn = std::function<void(const Point3&, double*)>;

Field sample_vector(const Grid& g, const PolyFn& fn) {
    Field u = Field::vector(g);
    double vals[3];
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        fn(g.point(p), vals);
        for (int c = 0; c < g.dim(); ++c) u.at(p, c) = vals[c];
    }
    return u;
}

} // namespace

std::vector<Field> polynomial_solution_family(const Grid& g, double lambda0, double mu0,
                                              int count) {
    const int d = g.dim();
    // quadratic modes are exact solutions of the constant-coefficient
    // homogeneous system at k = 0
    const double q2 = (lambda0 + 2.0 * mu0) / mu0;       // 2D axis mode
    const double q3 = (lambda0 + 2.0 * mu0) / (2.0 * mu0); // 3D axis mode
    const double qm = (lambda0 + mu0) / (2.0 * mu0);     // mixed mode

    std::vector<PolyFn> fns;
    if (d == 2) {
        fns = {
            [](const Point3& x, double* u) { u[0] = x[0]; u[1] = x[1]; },
            [](const Point3& x, double* u) { u[0] = x[1]; u[1] = x[0]; },
            [](const Point3& x, double* u) { u[0] = x[0]; u[1] = -x[1]; },
            [q2](const Point3& x, double* u) { u[0] = x[0] * x[0] - q2 * x[1] * x[1]; u[1] = 0.0; },
            [q2](const Point3& x, double* u) { u[0] = 0.0; u[1] = x[1] * x[1] - q2 * x[0] * x[0]; },
            [qm](const Point3& x, double* u) { u[0] = x[0] * x[1]; u[1] = -qm * x[0] * x[0]; },
            [qm](const Point3& x, double* u) { u[0] = -qm * x[1] * x[1]; u[1] = x[0] * x[1]; },
            [](const Point3& x, double* u) { u[0] = x[0] * x[0] - x[1] * x[1]; u[1] = -2.0 * x[0] * x[1]; },
        };
    } else {
        fns = {
            [](const Point3& x, double* u) { u[0] = x[0]; u[1] = x[1]; u[2] = x[2]; },
            [](const Point3& x, double* u) { u[0] = x[1]; u[1] = x[0]; u[2] = 0.0; },
            [](const Point3& x, double* u) { u[0] = 0.0; u[1] = x[2]; u[2] = x[1]; },
            [](const Point3& x, double* u) { u[0] = x[2]; u[1] = 0.0; u[2] = x[0]; },
            [q3](const Point3& x, double* u) {
                u[0] = x[0] * x[0] - q3 * (x[1] * x[1] + x[2] * x[2]); u[1] = 0.0; u[2] = 0.0; },
            [q3](const Point3& x, double* u) {
                u[0] = 0.0; u[1] = x[1] * x[1] - q3 * (x[0] * x[0] + x[2] * x[2]); u[2] = 0.0; },
            [q3](const Point3& x, double* u) {
                u[0] = 0.0; u[1] = 0.0; u[2] = x[2] * x[2] - q3 * (x[0] * x[0] + x[1] * x[1]); },
            [qm](const Point3& x, double* u) { u[0] = x[0] * x[1]; u[1] = -qm * x[0] * x[0]; u[2] = 0.0; },
            [qm](const Point3& x, double* u) { u[0] = 0.0; u[1] = x[1] * x[2]; u[2] = -qm * x[1] * x[1]; },
            [qm](const Point3& x, double* u) { u[0] = -qm * x[2] * x[2]; u[1] = 0.0; u[2] = x[0] * x[2]; },
            [](const Point3& x, double* u) {
                u[0] = x[0] * x[0] - x[1] * x[1]; u[1] = -2.0 * x[0] * x[1]; u[2] = 0.0; },
            [](const Point3& x, double* u) { u[0] = x[1] * x[2]; u[1] = x[0] * x[2]; u[2] = x[0] * x[1]; },
        };
    }
    if (count > static_cast<int>(fns.size()))
        throw ContractViolation("polynomial_solution_family: at most " +
                                std::to_string(fns.size()) + " modes available");
    std::vector<Field> out;
    for (int i = 0; i < count; ++i) out.push_back(sample_vector(g, fns[i]));
    return out;
}

} // namespace lamerecon
