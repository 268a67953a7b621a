#ifndef QSH_TWISTWAVE_HPP
#define QSH_TWISTWAVE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qsh/coefficients.hpp"
#include "qsh/field.hpp"

namespace qsh {

/// Cell-centered grid on [0, R]: r_j = (j + 1/2) R / m, no node at the
/// origin. Ghost values implement the odd extension of f through r = 0 and
/// homogeneous Dirichlet at R.
struct RadialGrid {
    double outer_radius = 1.0;
    int cells = 64;
    int dim = 3;

    double h() const { return outer_radius / cells; }
    double r(int j) const { return (j + 0.5) * h(); }
};

RadialGrid make_radial_grid(double outer_radius, int cells, int dim);

/// Profile (f, f_t) of the melting-hedgehog wave at one instant.
struct RadialState {
    double t = 0.0;
    std::vector<double> f;
    std::vector<double> ft;
};

struct RadialTendency {
    std::vector<double> df;
    std::vector<double> dft;
};

/// Second-order centered differences for
///   J f_tt + mu1 f_t = L (f_rr + (d-1)/r f_r - 2d/r^2 f)
///                      - a f + b(d-2)/d f^2 - c(d-1)/d f^3.
RadialTendency radial_rhs(const RadialState& state, const Coefficients& coeffs,
                          const RadialGrid& grid);

/// RK4 advance; throws NonFiniteError on blow-up and rejects states whose
/// origin extrapolation is grossly inconsistent with f(0) = 0.
RadialState radial_step(const RadialState& state, const Coefficients& coeffs,
                        const RadialGrid& grid, double dt);

/// Wave CFL plus the origin-cell stiffness guard for the 2d/r^2 term.
double radial_cfl_dt(const RadialGrid& grid, const Coefficients& coeffs, double safety = 0.4);

/// Energy and dissipation rate of the radial estimate, r^2-weighted:
///   E = int ( J/2 f_t^2 + L/2 f_r^2 + h_B(f) + L d f^2/r^2 ) r^2 dr,
///   D = mu1 int f_t^2 r^2 dr,
/// with h_B(f) = a/2 f^2 - b(d-2)/(3d) f^3 + c(d-1)/(4d) f^4.
struct RadialEnergy {
    double energy = 0.0;
    double dissipation_rate = 0.0;
};

RadialEnergy radial_energy(const RadialState& state, const Coefficients& coeffs,
                           const RadialGrid& grid);

/// Quadratic extrapolation of f and f_r to r = 0 from the first three cells;
/// both vanish (to O(h^2)) for admissible states.
struct OriginDiagnostics {
    double f0 = 0.0;
    double fr0 = 0.0;
};

OriginDiagnostics origin_diagnostics(std::span<const double> f, const RadialGrid& grid);

/// Lift a radial profile to (Q, W) = (f(|x-c|) Hbar(x-c), f_t(|x-c|) Hbar(x-c))
/// by cubic-spline interpolation in r. The profile must fit the torus:
/// beyond min(R, domain_length/2 - 2 h) it may not exceed 1e-12 max|f|.
std::pair<MatrixField, MatrixField> lift_to_tensor(const RadialState& state,
                                                   const RadialGrid& rgrid, const Grid& grid,
                                                   const std::array<double, 3>& center);

/// f(r) recovered from a lifted field along x = center + (r, 0, ...):
/// values Q_00 / (1 - 1/d) at the grid points of that ray.
std::vector<std::pair<double, double>> extract_profile(const MatrixField& q,
                                                       const std::array<double, 3>& center);

struct CompareSample {
    double t = 0.0;
    double l2_discrepancy = 0.0;
    double residual_full = 0.0;
    double residual_radial = 0.0;
};

struct CompareReport {
    std::vector<CompareSample> samples;
    double final_discrepancy = 0.0;
    double max_constraint_residual = 0.0;
    double max_origin_value = 0.0;  // extrapolated |f(t,0)| along the run
    double max_origin_slope = 0.0;  // extrapolated |f_r(t,0)|
    std::vector<std::string> warnings;
};

struct CompareOptions {
    double dt_full = 0.0;    // 0: cfl/2
    double dt_radial = 0.0;  // 0: radial cfl
    int samples = 8;
    std::array<double, 3> center{0.0, 0.0, 0.0};  // zeros: domain center
};

/// Evolve the radial system and the full Q-only tensor system from the same
/// lifted initial data and report the L2 discrepancy and constraint
/// residuals along the way. d = 2 per the twist-wave statement; d = 3 runs
/// carry a warning.
CompareReport compare_full_vs_radial(const RadialState& initial, const Coefficients& coeffs,
                                     const Grid& grid, const RadialGrid& rgrid, double t_end,
                                     const CompareOptions& opts = {});

}  // namespace qsh

#endif
