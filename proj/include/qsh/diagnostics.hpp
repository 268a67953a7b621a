#ifndef QSH_DIAGNOSTICS_HPP
#define QSH_DIAGNOSTICS_HPP

#include <span>
#include <vector>

#include "qsh/coefficients.hpp"
#include "qsh/dynamics.hpp"

namespace qsh {

/// Components of the total energy and of the dissipation/cross terms in the
/// first energy estimate. The elastic piece carries L/2 by default; the
/// statement of the decay theorem prints L/4, kept reachable via the flag.
enum class ElasticFactor { Half, Quarter };

struct EnergyBreakdown {
    double kinetic = 0.0;              // 1/2 int |v|^2
    double rotational = 0.0;           // J/2 int |W|^2
    double elastic = 0.0;              // L/2 int |grad Q|^2  (or L/4, see flag)
    double bulk = 0.0;                 // int psi_B(Q)
    double total = 0.0;
    double dissipation_newtonian = 0.0;  // beta4/2 int |grad v|^2
    double dissipation_beta1 = 0.0;      // beta1 int (Q:A)^2
    double dissipation_rotational = 0.0; // mu1 int |W - [Omega,Q]|^2
    double cross_mu2tilde = 0.0;         // mu2_tilde int W:A
    double cross_mu2 = 0.0;              // mu2 int tr(A [Omega,Q])
};

EnergyBreakdown energy_breakdown(const SimState& state, const Coefficients& coeffs,
                                 ElasticFactor factor = ElasticFactor::Half);

/// Residual of the first energy estimate along a uniform-dt history:
///   r_n = (E_{n+1} - E_{n-1}) / (2 dt) + D_n - RHS_n
/// with D the three dissipation integrals and RHS the two cross terms.
/// Requires at least 3 samples; returns one value per interior sample.
std::vector<double> energy_law_residual(std::span<const EnergyBreakdown> history, double dt);

/// Pieces of the second energy estimate used for L2 control of Q.
struct SecondEnergyTerms {
    double functional = 0.0;   // 1/2 int ( J|W+Q|^2 - J|W|^2 + (mu1-J)|Q|^2 )
    double j_qdot_sq = 0.0;    // J int |W|^2
    double elastic_l2 = 0.0;   // L int |grad Q|^2
    double p_q = 0.0;          // int ( -a|Q|^2 + b tr Q^3 - c |Q|^4 )
    double cross_aq = 0.0;     // mu2_tilde/2 int tr(A Q)
};

SecondEnergyTerms second_energy_terms(const SimState& state, const Coefficients& coeffs);

/// The small-data proof's Lyapunov pair.
struct LyapunovMonitor {
    double phi = 0.0;  // |v|H^s^2 + |Q|H^s^2 + |W|H^s^2 + |grad Q|H^s^2
    double psi = 0.0;  // |grad v|H^s^2 + |W|H^s^2 + |Q|H^s^2 + |grad Q|H^s^2
    double s = 0.0;
    bool low_s_warning = false;  // s <= dim/2
};

LyapunovMonitor lyapunov_monitor(const SimState& state, double s);

/// Leray residual of the twist-wave constraint force with v = 0, W = Q_t:
///   ||P div( -grad Q (x) grad Q + mu2/2 W + mu1 [Q, W] )||_L2 / (1 + ||grad Q||_L2^2).
/// Zero exactly when the force is a pure gradient.
double twist_constraint_residual(const MatrixField& q, const MatrixField& w,
                                 const Coefficients& coeffs);

}  // namespace qsh

#endif
