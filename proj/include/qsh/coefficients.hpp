#ifndef QSH_COEFFICIENTS_HPP
#define QSH_COEFFICIENTS_HPP

#include <string>
#include <utility>
#include <vector>

namespace qsh {

/// Material and viscosity coefficients of the inertial Qian-Sheng system,
/// all non-dimensional. Immutable value object once built; safe to share.
struct Coefficients {
    // bulk potential psi_B = a/2 tr(Q^2) - b/3 tr(Q^3) + c/4 (tr Q^2)^2
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    double L = 1.0;    // elastic diffusion, > 0
    double J = 0.1;    // inertial density, > 0
    double mu1 = 1.0;  // rotational viscosity
    double mu2 = 0.0;
    double mu2_tilde = 0.0;
    double beta1 = 0.0;
    double beta4 = 1.0;  // Newtonian viscosity
    double beta5 = 0.0;
    double beta6 = 0.0;
    int dim = 2;  // spatial dimension, 2 or 3
};

enum class Regime { EnergyDecay, SmallData, Unconstrained };

/// Result of checking a coefficient set against a regime's hypotheses.
/// Validation never throws for physics violations; it reports them so that
/// deliberately inadmissible runs (energy growth demos) stay possible.
struct ValidationReport {
    bool ok = true;  // true iff violations empty
    std::vector<std::pair<std::string, std::string>> violations;  // (condition, message)
    double mu1_bar = 0.0;  // coercivity threshold; NaN when not computable (c <= 0)
    std::vector<std::string> warnings;
};

ValidationReport validate(const Coefficients& coeffs, Regime regime);

/// Smallest mu1_bar >= 0 (bisection tolerance 1e-6) with
/// mu1_bar |Q|^2 + 4 psi_B(Q) >= 0 over symmetric traceless Q, reduced to a
/// one-dimensional sweep over |Q| with the worst-case cubic direction.
/// The b = 0 branch returns max(0, -4a) directly. Requires c > 0.
double validate_coercivity(const Coefficients& coeffs);

/// MBBA viscosity ratios scaled by mu1. a, b, c, L, J stay at the documented
/// defaults (1, 1, 1, 1, 0.1); `warnings` receives notes for those.
Coefficients preset_mbba(double mu1, std::vector<std::string>* warnings = nullptr);

const char* regime_name(Regime regime);
Regime regime_from_name(const std::string& name);

}  // namespace qsh

#endif
