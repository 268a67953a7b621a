#include "qsh/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsh/errors.hpp"
#include "qsh/tensor.hpp"

namespace qsh {

namespace {

// (v.grad)f for one scalar component, given the physical derivative fields.
void add_advection(ScalarField& out, const VectorField& v,
                   const std::array<const ScalarField*, 3>& df, double sign) {
    const int d = v.dim();
    auto o = out.physical_mut();
    for (int a = 0; a < d; ++a) {
        auto vp = v[a].physical();
        auto dp = df[static_cast<std::size_t>(a)]->physical();
        for (std::size_t i = 0; i < o.size(); ++i) o[i] += sign * vp[i] * dp[i];
    }
}

MatrixField advect_matrix(const VectorField& v, const MatrixField& q, int cut) {
    MatrixField out(q.grid());
    const std::vector<MatrixField> dq = gradient(q);
    for (int i = 0; i < q.dim(); ++i)
        for (int j = 0; j < q.dim(); ++j) {
            std::array<const ScalarField*, 3> df{};
            for (int a = 0; a < q.dim(); ++a) df[static_cast<std::size_t>(a)] = &dq[static_cast<std::size_t>(a)](i, j);
            out(i, j).fill(0.0);
            add_advection(out(i, j), v, df, 1.0);
        }
    truncate_product(out, cut);
    return out;
}

VectorField advect_vector(const VectorField& v, int cut) {
    VectorField out(v.grid());
    for (int i = 0; i < v.dim(); ++i) {
        std::array<ScalarField, 3> dv = {derivative(v[i], 0), derivative(v[i], 1),
                                         v.dim() == 3 ? derivative(v[i], 2) : ScalarField(v.grid())};
        std::array<const ScalarField*, 3> df{&dv[0], &dv[1], &dv[2]};
        out[i].fill(0.0);
        add_advection(out[i], v, df, 1.0);
    }
    truncate_product(out, cut);
    return out;
}

MatrixField reaction_field(const MatrixField& q, const Coefficients& coeffs, int cut) {
    MatrixField out(q.grid());
    const std::int64_t np = q.grid().point_count();
    MatrixPhysView qv(q);
    MatrixPhysWriter ow(out);
    for (std::int64_t p = 0; p < np; ++p) ow.set(p, reaction_term(qv.at(p), coeffs));
    truncate_product(out, cut);
    return out;
}

MatrixField commutator_field(const MatrixField& a, const MatrixField& b) {
    MatrixField out(a.grid());
    const std::int64_t np = a.grid().point_count();
    MatrixPhysView av(a);
    MatrixPhysView bv(b);
    MatrixPhysWriter ow(out);
    for (std::int64_t p = 0; p < np; ++p) ow.set(p, commutator(av.at(p), bv.at(p)));
    return out;
}

// Shared per-evaluation ingredients so the combined tendency assembly does
// not differentiate the same fields twice.
struct RhsWork {
    RhsWork(const SimState& s, bool with_velocity)
        : a(s.grid()), omega(s.grid()) {
        if (with_velocity) {
            auto [aa, oo] = strain_rotation(s.v);
            a = std::move(aa);
            omega = std::move(oo);
        }
    }
    MatrixField a;
    MatrixField omega;
};

VectorField momentum_rhs_impl(const SimState& state, const Coefficients& coeffs,
                              const RhsWork& work, int cut) {
    MatrixField stress = elastic_stress(state.q, coeffs, cut);
    {
        MatrixField visc = viscous_stress(state.q, work.a, work.omega, state.w, coeffs, cut);
        for (std::size_t i = 0; i < stress.components().size(); ++i)
            axpy(stress.components()[i], 1.0, visc.components()[i]);
    }

    VectorField rhs = divergence(stress);
    {
        VectorField adv = advect_vector(state.v, cut);
        axpy(rhs, -1.0, adv);
    }
    if (coeffs.beta4 != 0.0) {
        VectorField lap = laplacian(state.v);
        axpy(rhs, 0.5 * coeffs.beta4, lap);
    }
    leray_project_inplace(rhs);
    return rhs;
}

std::pair<MatrixField, MatrixField> qtensor_rhs_impl(const SimState& state,
                                                     const Coefficients& coeffs,
                                                     const RhsWork& work, int cut,
                                                     bool with_velocity) {
    if (coeffs.J <= 0.0) throw InvalidArgument("qtensor_rhs requires J > 0");
    const double inv_j = 1.0 / coeffs.J;

    // dQ/dt = W - v.grad Q
    MatrixField dq(state.grid());
    for (std::size_t i = 0; i < dq.components().size(); ++i) {
        auto o = dq.components()[i].physical_overwrite();
        auto wsrc = state.w.components()[i].physical();
        std::copy(wsrc.begin(), wsrc.end(), o.begin());
    }
    if (with_velocity) {
        MatrixField adv = advect_matrix(state.v, state.q, cut);
        axpy(dq, -1.0, adv);
    }

    // dW/dt = -v.grad W + (1/J)(-mu1 W + L lap Q + reaction + mu2t/2 A + mu1 [Omega,Q])
    MatrixField dw = reaction_field(state.q, coeffs, cut);
    {
        MatrixField lap = laplacian(state.q);
        axpy(dw, coeffs.L, lap);
    }
    axpy(dw, -coeffs.mu1, state.w);
    if (with_velocity) {
        if (coeffs.mu2_tilde != 0.0) axpy(dw, 0.5 * coeffs.mu2_tilde, work.a);
        if (coeffs.mu1 != 0.0) {
            MatrixField com = commutator_field(work.omega, state.q);
            truncate_product(com, cut);
            axpy(dw, coeffs.mu1, com);
        }
    }
    scale(dw, inv_j);
    if (with_velocity) {
        MatrixField adv = advect_matrix(state.v, state.w, cut);
        axpy(dw, -1.0, adv);
    }

    project_symmetric_traceless_inplace(dq);
    project_symmetric_traceless_inplace(dw);
    return {std::move(dq), std::move(dw)};
}

}  // namespace

std::pair<MatrixField, MatrixField> strain_rotation(const VectorField& v) {
    const Grid& g = v.grid();
    MatrixField grad = gradient(v);
    MatrixField a(g);
    MatrixField omega(g);
    for (int i = 0; i < g.dim; ++i)
        for (int j = i; j < g.dim; ++j) {
            auto gij = grad(i, j).physical();
            auto gji = grad(j, i).physical();
            auto ap = a(i, j).physical_overwrite();
            auto op = omega(i, j).physical_overwrite();
            for (std::size_t p = 0; p < ap.size(); ++p) {
                ap[p] = 0.5 * (gij[p] + gji[p]);
                op[p] = 0.5 * (gij[p] - gji[p]);
            }
            if (j > i) {
                auto amirror = a(j, i).physical_overwrite();
                auto omirror = omega(j, i).physical_overwrite();
                for (std::size_t p = 0; p < ap.size(); ++p) {
                    amirror[p] = ap[p];
                    omirror[p] = -op[p];
                }
            }
        }
    return {std::move(a), std::move(omega)};
}

MatrixField corotational_flux(const MatrixField& q, const MatrixField& w,
                              const MatrixField& omega) {
    MatrixField out = commutator_field(omega, q);
    scale(out, -1.0);
    axpy(out, 1.0, w);
    return out;
}

MatrixField elastic_stress(const MatrixField& q, const Coefficients& coeffs, int cut) {
    const Grid& g = q.grid();
    const int d = g.dim;
    const std::vector<MatrixField> dq = gradient(q);
    MatrixField out(g);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            auto o = out(i, j).physical_overwrite();
            std::fill(o.begin(), o.end(), 0.0);
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    auto qi = dq[static_cast<std::size_t>(i)](k, l).physical();
                    auto qj = dq[static_cast<std::size_t>(j)](k, l).physical();
                    for (std::size_t p = 0; p < o.size(); ++p) o[p] -= coeffs.L * qi[p] * qj[p];
                }
            if (j > i) {
                auto mirror = out(j, i).physical_overwrite();
                std::copy(o.begin(), o.end(), mirror.begin());
            }
        }
    truncate_product(out, cut);
    return out;
}

MatrixField viscous_stress(const MatrixField& q, const MatrixField& a,
                           const MatrixField& omega, const MatrixField& w,
                           const Coefficients& coeffs, int cut) {
    const Grid& g = q.grid();
    MatrixField out(g);
    const std::int64_t np = g.point_count();
    MatrixPhysView qv(q);
    MatrixPhysView av(a);
    MatrixPhysView ov(omega);
    MatrixPhysView wv(w);
    MatrixPhysWriter ow(out);
    for (std::int64_t p = 0; p < np; ++p) {
        const Mat qm = qv.at(p);
        const Mat am = av.at(p);
        const Mat nm = wv.at(p) - commutator(ov.at(p), qm);
        Mat s = coeffs.beta1 * double_contract(qm, am) * qm;
        s += coeffs.beta5 * (am * qm);
        s += coeffs.beta6 * (qm * am);
        s += 0.5 * coeffs.mu2 * nm;
        s += coeffs.mu1 * commutator(qm, nm);
        ow.set(p, s);
    }
    truncate_product(out, cut);
    return out;
}

VectorField momentum_rhs(const SimState& state, const Coefficients& coeffs, int cut) {
    RhsWork work(state, true);
    return momentum_rhs_impl(state, coeffs, work, cut);
}

std::pair<MatrixField, MatrixField> qtensor_rhs(const SimState& state,
                                                const Coefficients& coeffs, int cut) {
    RhsWork work(state, true);
    return qtensor_rhs_impl(state, coeffs, work, cut, true);
}

Tendencies compute_tendencies(const SimState& state, const Coefficients& coeffs,
                              const StepOptions& opts) {
    Tendencies out(state.grid());
    RhsWork work(state, !opts.frozen_velocity);
    if (!opts.frozen_velocity)
        out.dv = momentum_rhs_impl(state, coeffs, work, opts.mollifier_cut);
    auto [dq, dw] = qtensor_rhs_impl(state, coeffs, work, opts.mollifier_cut,
                                     !opts.frozen_velocity);
    out.dq = std::move(dq);
    out.dw = std::move(dw);
    return out;
}

namespace {

SimState state_plus(const SimState& s, const Tendencies& k, double h, bool frozen) {
    SimState out(s.grid());
    out.t = s.t;
    if (!frozen) {
        out.v = s.v;
        axpy(out.v, h, k.dv);
    }
    out.q = s.q;
    axpy(out.q, h, k.dq);
    out.w = s.w;
    axpy(out.w, h, k.dw);
    return out;
}

}  // namespace

SimState step_rk4(const SimState& state, const Coefficients& coeffs, double dt,
                  const StepOptions& opts) {
    if (!(dt > 0.0)) throw InvalidArgument("step requires dt > 0");

    const Tendencies k1 = compute_tendencies(state, coeffs, opts);
    SimState s2 = state_plus(state, k1, 0.5 * dt, opts.frozen_velocity);
    const Tendencies k2 = compute_tendencies(s2, coeffs, opts);
    SimState s3 = state_plus(state, k2, 0.5 * dt, opts.frozen_velocity);
    const Tendencies k3 = compute_tendencies(s3, coeffs, opts);
    SimState s4 = state_plus(state, k3, dt, opts.frozen_velocity);
    const Tendencies k4 = compute_tendencies(s4, coeffs, opts);

    SimState out(state.grid());
    out.t = state.t + dt;
    const double h6 = dt / 6.0;
    if (!opts.frozen_velocity) {
        out.v = state.v;
        axpy(out.v, h6, k1.dv);
        axpy(out.v, 2.0 * h6, k2.dv);
        axpy(out.v, 2.0 * h6, k3.dv);
        axpy(out.v, h6, k4.dv);
        leray_project_inplace(out.v);
    }
    out.q = state.q;
    axpy(out.q, h6, k1.dq);
    axpy(out.q, 2.0 * h6, k2.dq);
    axpy(out.q, 2.0 * h6, k3.dq);
    axpy(out.q, h6, k4.dq);
    out.w = state.w;
    axpy(out.w, h6, k1.dw);
    axpy(out.w, 2.0 * h6, k2.dw);
    axpy(out.w, 2.0 * h6, k3.dw);
    axpy(out.w, h6, k4.dw);

    project_symmetric_traceless_inplace(out.q);
    project_symmetric_traceless_inplace(out.w);
    dealias_inplace(out.v);
    dealias_inplace(out.q);
    dealias_inplace(out.w);
    out.v.divergence_free = true;

    if (!all_finite(out.v) || !all_finite(out.q) || !all_finite(out.w))
        throw NonFiniteError("non-finite field after step (blow-up or CFL violation)", state.t);
    return out;
}

SimState step_mollified(const SimState& state, const Coefficients& coeffs, double dt,
                        int n_cut, bool frozen_velocity) {
    StepOptions opts;
    opts.mollifier_cut = n_cut;
    opts.frozen_velocity = frozen_velocity;
    return step_rk4(state, coeffs, dt, opts);
}

double cfl_dt(const SimState& state, const Coefficients& coeffs, double safety) {
    const Grid& g = state.grid();
    const double h = g.spacing();
    double dt = std::numeric_limits<double>::infinity();

    if (coeffs.beta4 > 0.0) dt = std::min(dt, h * h / coeffs.beta4);
    const double vmax = max_pointwise_norm(state.v);
    if (vmax > 0.0) dt = std::min(dt, h / vmax);
    if (coeffs.L > 0.0 && coeffs.J > 0.0) dt = std::min(dt, h / std::sqrt(coeffs.L / coeffs.J));
    const double qmax = max_pointwise_norm(state.q);
    const double react = coeffs.mu1 / coeffs.J + std::abs(coeffs.a) +
                         std::abs(coeffs.b) * qmax + coeffs.c * qmax * qmax;
    if (react > 0.0) dt = std::min(dt, 1.0 / react);

    return safety * dt;
}

}  // namespace qsh
