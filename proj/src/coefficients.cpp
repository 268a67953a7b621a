#include "qsh/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsh/errors.hpp"

namespace qsh {

namespace {

bool nearly(double x, double y) {
    return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x) + std::abs(y));
}

void check(ValidationReport& rep, bool holds, const std::string& cond, const std::string& msg) {
    if (!holds) rep.violations.emplace_back(cond, msg);
}

// Minimum over rho >= 0 of (mu + 2a) - B*rho + c*rho^2, sampled densely.
// This is mu1_bar|Q|^2 + 4 psi_B(Q) divided by |Q|^2 = rho^2, with the cubic
// term already at its worst direction (|tr Q^3| <= rho^3 / sqrt(6) in d = 3).
double sampled_min(double mu, double a, double B, double c, double rho_max) {
    const int samples = 20001;
    double lo = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double rho = rho_max * static_cast<double>(i) / (samples - 1);
        lo = std::min(lo, (mu + 2.0 * a) - B * rho + c * rho * rho);
    }
    return lo;
}

}  // namespace

double validate_coercivity(const Coefficients& coeffs) {
    if (coeffs.c <= 0.0) throw InvalidArgument("validate_coercivity requires c > 0");
    const double a = coeffs.a;
    if (coeffs.b == 0.0) return std::max(0.0, -4.0 * a);

    const double B = coeffs.dim == 3 ? 4.0 * std::abs(coeffs.b) / (3.0 * std::sqrt(6.0)) : 0.0;
    const double rho_max = std::max(10.0, 1.5 * B / coeffs.c + 1.0);

    auto admissible = [&](double mu) { return sampled_min(mu, a, B, coeffs.c, rho_max) >= -1e-12 * (1.0 + mu); };

    if (admissible(0.0)) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (!admissible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) throw InvalidArgument("validate_coercivity failed to bracket mu1_bar");
    }
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? hi : lo) = mid;
    }
    return hi;
}

ValidationReport validate(const Coefficients& c, Regime regime) {
    ValidationReport rep;
    rep.mu1_bar = std::numeric_limits<double>::quiet_NaN();

    check(rep, c.J > 0.0, "J>0", "inertial density J must be positive");
    check(rep, c.L > 0.0, "L>0", "diffusion coefficient L must be positive");
    check(rep, c.dim == 2 || c.dim == 3, "dim", "spatial dimension must be 2 or 3");

    if (regime == Regime::EnergyDecay) {
        check(rep, c.beta1 >= 0.0, "beta1>=0", "beta1 must be non-negative");
        check(rep, c.beta4 > 0.0, "beta4>0", "beta4 must be positive");
        check(rep, c.mu1 >= 0.0, "mu1>=0", "mu1 must be non-negative");
        check(rep, c.c > 0.0, "c>0", "bulk coefficient c must be positive");
        check(rep, nearly(c.beta6 - c.beta5, c.mu2), "parodi",
              "Parodi relation beta6-beta5=mu2 fails");
        check(rep, nearly(c.beta5 + c.beta6, 0.0), "beta5+beta6=0", "beta5+beta6=0 fails");
        // mu2 convention: either both zero or mu2_tilde = -mu2. Other pairings
        // leave an unsigned cross term in the energy balance.
        const bool mu2_ok = (c.mu2_tilde == 0.0 && c.mu2 == 0.0) || nearly(c.mu2_tilde, -c.mu2);
        check(rep, mu2_ok, "mu2cond",
              "mu2_tilde must equal -mu2, or mu2_tilde = mu2 = 0");
        const double cross = std::abs(c.mu2_tilde) + std::abs(c.mu2) + std::abs(c.beta5) + std::abs(c.beta6);
        if (c.beta4 <= cross)
            rep.warnings.push_back("beta4 may be too small to absorb the cross terms "
                                   "(beta4 <= |mu2_tilde|+|mu2|+|beta5|+|beta6|); "
                                   "energy decay is monitored at runtime");
    } else if (regime == Regime::SmallData) {
        check(rep, c.beta1 > 0.0, "beta1>0", "beta1 must be positive");
        check(rep, c.mu1 > 0.0, "mu1>0", "mu1 must be positive");
        check(rep, c.a > 0.0, "a>0", "bulk coefficient a must be positive");
        if (c.c > 0.0) {
            rep.mu1_bar = validate_coercivity(c);
            if (c.mu1 <= rep.mu1_bar)
                rep.warnings.push_back("mu1 does not exceed the empirical coercivity threshold mu1_bar");
        }
        if (c.J >= c.mu1)
            rep.warnings.push_back("J >= mu1; the L2-control argument assumes J < mu1");
        const double cross = std::abs(c.mu2_tilde) + std::abs(c.mu2) + std::abs(c.beta5) + std::abs(c.beta6);
        if (c.beta4 <= cross)
            rep.warnings.push_back("beta4 may be too small to absorb the cross terms");
    }

    if (regime != Regime::SmallData && c.c > 0.0) rep.mu1_bar = validate_coercivity(c);
    rep.ok = rep.violations.empty();
    return rep;
}

Coefficients preset_mbba(double mu1, std::vector<std::string>* warnings) {
    if (mu1 <= 0.0) throw InvalidArgument("preset_mbba requires mu1 > 0");
    Coefficients c;
    c.mu1 = mu1;
    c.mu2 = -1.92 * mu1;
    c.beta1 = 0.17 * mu1;
    c.beta4 = 0.7 * mu1;
    c.beta5 = 0.7 * mu1;
    c.beta6 = -0.79 * mu1;
    c.mu2_tilde = -c.mu2;
    c.a = 1.0;
    c.b = 1.0;
    c.c = 1.0;
    c.L = 1.0;
    c.J = 0.1;
    c.dim = 3;
    if (warnings) {
        warnings->push_back("a, b, c, L, J set to defaults (1, 1, 1, 1, 0.1); not MBBA values");
        warnings->push_back("mu2_tilde set to -mu2 (co-rotational convention)");
    }
    return c;
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::EnergyDecay: return "energy_decay";
        case Regime::SmallData: return "small_data";
        case Regime::Unconstrained: return "unconstrained";
    }
    return "?";
}

Regime regime_from_name(const std::string& name) {
    if (name == "energy_decay") return Regime::EnergyDecay;
    if (name == "small_data") return Regime::SmallData;
    if (name == "unconstrained") return Regime::Unconstrained;
    throw InvalidArgument("unknown regime: " + name);
}

}  // namespace qsh
