#ifndef QSH_DYNAMICS_HPP
#define QSH_DYNAMICS_HPP

#include <utility>

#include "qsh/coefficients.hpp"
#include "qsh/field.hpp"
#include "qsh/operators.hpp"

namespace qsh {

/// Full state of the coupled system as a first-order system in (v, Q, W)
/// with W = Qdot = dQ/dt + v.grad Q, the material derivative. Pressure is
/// eliminated by Leray projection and never carried.
struct SimState {
    explicit SimState(const Grid& grid) : t(0.0), v(grid), q(grid), w(grid) {}
    double t;
    VectorField v;
    MatrixField q;
    MatrixField w;

    const Grid& grid() const { return v.grid(); }
};

struct Tendencies {
    explicit Tendencies(const Grid& grid) : dv(grid), dq(grid), dw(grid) {}
    VectorField dv;
    MatrixField dq;
    MatrixField dw;
};

struct StepOptions {
    int mollifier_cut = -1;       // < 0: dealias only; >= 0: wrap products in J_n
    bool frozen_velocity = false; // q_only runs: v stays identically zero
};

/// Symmetric and skew parts of grad v: A + Omega = grad v exactly.
std::pair<MatrixField, MatrixField> strain_rotation(const VectorField& v);

/// Co-rotational time flux N = W - [Omega, Q], pointwise (no truncation).
MatrixField corotational_flux(const MatrixField& q, const MatrixField& w,
                              const MatrixField& omega);

/// -L grad Q (.) grad Q, with (grad Q (.) grad Q)_ij = Q_kl,i Q_kl,j.
MatrixField elastic_stress(const MatrixField& q, const Coefficients& coeffs,
                           int mollifier_cut = -1);

/// beta1 Q (Q:A) + beta5 A Q + beta6 Q A + mu2/2 N + mu1 [Q, N], N = W - [Omega, Q].
/// The Newtonian beta4 part lives in the momentum equation as beta4/2 lap v.
MatrixField viscous_stress(const MatrixField& q, const MatrixField& a,
                           const MatrixField& omega, const MatrixField& w,
                           const Coefficients& coeffs, int mollifier_cut = -1);

/// P[ -(v.grad)v + beta4/2 lap v + div(elastic + viscous stress) ]; divergence-free.
VectorField momentum_rhs(const SimState& state, const Coefficients& coeffs,
                         int mollifier_cut = -1);

/// dQ/dt = W - v.grad Q;
/// dW/dt = -v.grad W + (1/J)(-mu1 W + L lap Q + reaction(Q) + mu2_tilde/2 A + mu1 [Omega, Q]).
/// Both outputs symmetric traceless.
std::pair<MatrixField, MatrixField> qtensor_rhs(const SimState& state,
                                                const Coefficients& coeffs,
                                                int mollifier_cut = -1);

Tendencies compute_tendencies(const SimState& state, const Coefficients& coeffs,
                              const StepOptions& opts = {});

/// Classical RK4. After the combined update: Leray projection of v, pointwise
/// symmetric-traceless projection of Q and W, dealiasing of all fields.
/// Throws NonFiniteError on NaN/Inf.
SimState step_rk4(const SimState& state, const Coefficients& coeffs, double dt,
                  const StepOptions& opts = {});

/// Same stepper with every nonlinear product additionally wrapped in the
/// sharp mollifier J_{n_cut}, reproducing the Friedrichs-type scheme.
SimState step_mollified(const SimState& state, const Coefficients& coeffs, double dt,
                        int n_cut, bool frozen_velocity = false);

/// Conservative explicit step size: safety * min of the viscous advice
/// h^2/beta4, the advective limit h/max|v|, the elastic wave limit
/// h/sqrt(L/J), and a reaction/damping limit. Zero-coefficient terms drop out.
double cfl_dt(const SimState& state, const Coefficients& coeffs, double safety = 0.4);

}  // namespace qsh

#endif
