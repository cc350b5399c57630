#pragma once

#include <complex>
#include <memory>

#include "lamerecon/phantoms.hpp"
#include "lamerecon/reduction.hpp"

namespace lamerecon {

/// rho = tau (alpha + i beta) with orthonormal alpha, beta; theta = alpha + i beta.
/// Every direction used here has exactly two nonzero theta components forming
/// (1, i) up to axis permutation and a unit phase, so theta . grad is a dbar
/// operator in a coordinate plane.
struct ComplexDirection {
    int dim = 2;
    Point3 alpha{1.0, 0.0, 0.0};
    Point3 beta{0.0, 1.0, 0.0};
    double tau = 1.0;

    ComplexDirection() = default;
    ComplexDirection(int dim, Point3 alpha, Point3 beta, double tau);

    /// which = 0: theta = (1, i[, 0]); 1: theta = i*(1, i[, 0]) = (i, -1[, 0]);
    /// 2 (3D only): theta = (1, 0, i).
    static ComplexDirection standard(int dim, int which, double tau);

    std::complex<double> theta(int axis) const { return {alpha[axis], beta[axis]}; }
    std::complex<double> rho(int axis) const { return tau * theta(axis); }
    /// |rho|^2 = sum |rho_i|^2 = 2 tau^2.
    double rho_norm_sq() const { return 2.0 * tau * tau; }
};

/// Structure of the dbar plane of a direction: theta . grad = phase * (d_p + i d_q).
struct DbarPlane {
    int axis_p = 0;
    int axis_q = 1;
    std::complex<double> phase{1.0, 0.0};
};
DbarPlane dbar_plane(const ComplexDirection& dir);

/// The (dim+1)x(dim+1) first-order potential of the reduced system, stored as
/// a real matrix field (row-major components):
///   top-left  = -2 mu^{1/2} Hess(mu^{-1}) + k^2 mu^{-3/2} I
///   top-right = -grad(log mu)
///   bottom-left = 0,  bottom-right = (lambda+mu)/(lambda+2mu) mu^{1/2}.
struct V1Field {
    Field m; // (dim+1)^2 components
    int dim;
    double k;
};

V1Field assemble_V1(const LameParameters& params, double k);
/// Same, sampling analytic lambda/mu on an arbitrary grid (used on padded
/// dbar grids; the samplers must be evaluable there).
V1Field assemble_V1(const ScalarSampler& lambda, const ScalarSampler& mu, const Grid& g,
                    double k);

struct DbarOptions {
    int oversample = 2;        ///< dbar grid refinement relative to the field grid
    double cutoff_margin = 0.35; ///< radial cutoff rolloff width, relative to R1
    double tol = 1e-12;        ///< Krylov relative tolerance
    int max_iter = 600;
    int near_radius = 8;       ///< cells given refined kernel moments
};

/// Leading-order CGO amplitude (r, s)^T with its transport-equation residual
/// diagnostics. `rs` is the restriction to the field grid; the residual is
/// measured on the dbar grid over the field box with high-order differences.
struct CgoAmplitude {
    Field rs; // complex, dim+1 components
    ComplexDirection dir;
    Point3 anchor{0.0, 0.0, 0.0};
    double residual_norm = 0.0;        ///< relative sup norm, all rows
    double second_row_residual = 0.0;  ///< relative sup norm, s-row identity
};

/// Solves the amplitude transport system -2 theta . grad (r,s) = V1 M_theta (r,s)
/// by a Cauchy-transform integral equation on a padded plane grid (slice by
/// slice in 3D), then normalizes so the amplitude equals `pin` at the anchor.
class DbarSolver {
public:
    /// V1 interpolated (clamped) beyond its grid.
    DbarSolver(const V1Field& v1, const Grid& field_grid, const ComplexDirection& dir,
               const DbarOptions& opts = {});
    /// V1 assembled from analytic samplers directly on the padded grid.
    DbarSolver(const ScalarSampler& lambda, const ScalarSampler& mu, double k,
               const Grid& field_grid, const ComplexDirection& dir,
               const DbarOptions& opts = {});
    ~DbarSolver();
    DbarSolver(DbarSolver&&) noexcept;

    /// Amplitude with value `pin` at the anchor (nearest grid point is used).
    CgoAmplitude amplitude(const std::vector<std::complex<double>>& pin,
                           const Point3& anchor) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

CgoAmplitude solve_amplitude(const V1Field& v1, const Grid& field_grid,
                             const ComplexDirection& dir,
                             const std::vector<std::complex<double>>& pin,
                             const Point3& anchor, const DbarOptions& opts = {});

/// u = e^{i rho . x} (mu^{-1/2} r + mu^{-1} (i rho s + grad s) - s grad(mu^{-1}))
/// with the phase differentiated exactly and s differentiated discretely.
Field build_displacement(const CgoAmplitude& amp, const LameParameters& params);

/// Phase-factored elasticity residual: for u = e^{i rho . x} A returns
/// e^{-i rho . x} L(u) evaluated with exact phase derivatives and discrete
/// amplitude derivatives. Avoids resolving the oscillation on the grid.
Field modulated_residual(const Field& amplitude, const ComplexDirection& dir,
                         const LameParameters& params, double k);

struct TauSweepReport {
    std::vector<double> taus;
    std::vector<double> rel_residuals; ///< sup |e^{-i rho x} L(u)| / (|rho|^2 sup |(r,s)|)
    double slope = 0.0;                ///< log-log least-squares fit
};

/// Residual decay of leading-order CGO displacements over a tau ladder.
/// The amplitude system is tau-independent, so one dbar solve serves all taus.
TauSweepReport tau_sweep(const ScalarSampler& lambda, const ScalarSampler& mu,
                         const Grid& field_grid, double k, int direction_which,
                         const std::vector<double>& taus, const Point3& anchor,
                         const DbarOptions& opts = {});

enum class DesignVariant { mu, lambda, both };

struct DesignedSolution {
    std::string name;
    int direction_which = 0;
    std::complex<double> s_at_anchor;
    std::complex<double> rho_dot_r_at_anchor;
    double transport_residual = 0.0;
    double trace_scale = 1.0; ///< sup norm removed from the stored traces
};

struct BoundaryDesign {
    std::vector<BoundaryData> traces; ///< Re/Im of each designed solution, sup-normalized
    std::vector<int> mu_targets;      ///< trace indices reserved as mu-variant targets
    std::vector<int> lambda_targets;
    std::vector<DesignedSolution> solutions;
    std::vector<Point3> anchors;
    std::vector<Point3> skipped_anchors;
    double tau = 0.0;
    double k = 0.0;
    int j_total = 0;
    double independence_radius = 0.0; ///< around the first anchor, from the designed fields
};

/// Boundary traces of leading-order CGO displacements built from a parameter
/// guess, realizing the anchor conditions of the construction (s(x0) = 1 for
/// the transport anchor, rho.r(x0) = 0 for the kappa anchor, paired equal
/// amplitudes on rho and i*rho). Emits 2 real traces per complex solution:
/// 2D mu: 6, 2D lambda/both: 8, 3D mu/lambda: 10, 3D both: 14 per anchor.
BoundaryDesign design_boundary_set(const ScalarSampler& lambda_guess,
                                   const ScalarSampler& mu_guess, const Grid& grid,
                                   double k, DesignVariant variant,
                                   const std::vector<Point3>& anchors, double tau,
                                   const DbarOptions& opts = {});

} // namespace lamerecon
