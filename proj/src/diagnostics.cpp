#include "qsh/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "qsh/errors.hpp"
#include "qsh/operators.hpp"
#include "qsh/tensor.hpp"

namespace qsh {

namespace {

double quadrature_weight(const Grid& g) {
    return g.volume() / static_cast<double>(g.point_count());
}

}  // namespace

EnergyBreakdown energy_breakdown(const SimState& state, const Coefficients& coeffs,
                                 ElasticFactor factor) {
    const Grid& g = state.grid();
    EnergyBreakdown e;

    e.kinetic = 0.5 * l2_norm_sq(state.v);
    e.rotational = 0.5 * coeffs.J * l2_norm_sq(state.w);
    const double elastic_factor = factor == ElasticFactor::Half ? 0.5 : 0.25;
    e.elastic = elastic_factor * coeffs.L * gradient_l2_sq(state.q);

    const double quad = quadrature_weight(g);
    const std::int64_t np = g.point_count();
    {
        MatrixPhysView qv(state.q);
        double acc = 0.0;
        for (std::int64_t p = 0; p < np; ++p) acc += bulk_potential(qv.at(p), coeffs);
        e.bulk = quad * acc;
    }
    e.total = e.kinetic + e.rotational + e.elastic + e.bulk;

    e.dissipation_newtonian = 0.5 * coeffs.beta4 * gradient_l2_sq(state.v);

    auto [a, omega] = strain_rotation(state.v);
    MatrixPhysView qv(state.q);
    MatrixPhysView av(a);
    MatrixPhysView ov(omega);
    MatrixPhysView wv(state.w);
    double acc_b1 = 0.0;
    double acc_rot = 0.0;
    double acc_wa = 0.0;
    double acc_aoq = 0.0;
    for (std::int64_t p = 0; p < np; ++p) {
        const Mat qm = qv.at(p);
        const Mat am = av.at(p);
        const Mat wm = wv.at(p);
        const Mat coq = commutator(ov.at(p), qm);
        const double qa = double_contract(qm, am);
        acc_b1 += qa * qa;
        const Mat n = wm - coq;
        double n2 = 0.0;
        for (int i = 0; i < n.dim(); ++i)
            for (int j = 0; j < n.dim(); ++j) n2 += n(i, j) * n(i, j);
        acc_rot += n2;
        acc_wa += double_contract(wm, am);
        acc_aoq += double_contract(am, coq);
    }
    e.dissipation_beta1 = coeffs.beta1 * quad * acc_b1;
    e.dissipation_rotational = coeffs.mu1 * quad * acc_rot;
    e.cross_mu2tilde = coeffs.mu2_tilde * quad * acc_wa;
    e.cross_mu2 = coeffs.mu2 * quad * acc_aoq;
    return e;
}

std::vector<double> energy_law_residual(std::span<const EnergyBreakdown> history, double dt) {
    if (history.size() < 3) throw InvalidArgument("energy_law_residual needs at least 3 samples");
    if (!(dt > 0.0)) throw InvalidArgument("energy_law_residual requires dt > 0");
    std::vector<double> out;
    out.reserve(history.size() - 2);
    for (std::size_t n = 1; n + 1 < history.size(); ++n) {
        const double dedt = (history[n + 1].total - history[n - 1].total) / (2.0 * dt);
        const double diss = history[n].dissipation_newtonian + history[n].dissipation_beta1 +
                            history[n].dissipation_rotational;
        const double rhs = history[n].cross_mu2tilde + history[n].cross_mu2;
        out.push_back(dedt + diss - rhs);
    }
    return out;
}

SecondEnergyTerms second_energy_terms(const SimState& state, const Coefficients& coeffs) {
    const Grid& g = state.grid();
    const double quad = quadrature_weight(g);
    const std::int64_t np = g.point_count();
    SecondEnergyTerms out;

    MatrixPhysView qv(state.q);
    MatrixPhysView wv(state.w);
    double acc_fun = 0.0;
    double acc_pq = 0.0;
    for (std::int64_t p = 0; p < np; ++p) {
        const Mat qm = qv.at(p);
        const Mat wm = wv.at(p);
        const Mat sum = wm + qm;
        double s2 = 0.0, w2 = 0.0, q2 = 0.0;
        for (int i = 0; i < qm.dim(); ++i)
            for (int j = 0; j < qm.dim(); ++j) {
                s2 += sum(i, j) * sum(i, j);
                w2 += wm(i, j) * wm(i, j);
                q2 += qm(i, j) * qm(i, j);
            }
        acc_fun += coeffs.J * (s2 - w2) + (coeffs.mu1 - coeffs.J) * q2;
        const double tr3 = trace(qm * qm * qm);
        acc_pq += -coeffs.a * q2 + coeffs.b * tr3 - coeffs.c * q2 * q2;
    }
    out.functional = 0.5 * quad * acc_fun;
    out.p_q = quad * acc_pq;
    out.j_qdot_sq = coeffs.J * l2_norm_sq(state.w);
    out.elastic_l2 = coeffs.L * gradient_l2_sq(state.q);

    auto [a, omega] = strain_rotation(state.v);
    out.cross_aq = 0.5 * coeffs.mu2_tilde * inner_product_l2(a, state.q);
    return out;
}

LyapunovMonitor lyapunov_monitor(const SimState& state, double s) {
    LyapunovMonitor m;
    m.s = s;
    m.low_s_warning = s <= 0.5 * state.grid().dim;
    const double v_hs = sobolev_norm(state.v, s);
    const double q_hs = sobolev_norm(state.q, s);
    const double w_hs = sobolev_norm(state.w, s);
    const double gq_hs = sobolev_norm_of_gradient(state.q, s);
    const double gv_hs = sobolev_norm_of_gradient(state.v, s);
    m.phi = v_hs * v_hs + q_hs * q_hs + w_hs * w_hs + gq_hs * gq_hs;
    m.psi = gv_hs * gv_hs + w_hs * w_hs + q_hs * q_hs + gq_hs * gq_hs;
    return m;
}

double twist_constraint_residual(const MatrixField& q, const MatrixField& w,
                                 const Coefficients& coeffs) {
    const Grid& g = q.grid();
    const int d = g.dim;

    // force = div( -grad Q (x) grad Q + mu2/2 W + mu1 [Q, W] ), products dealiased
    MatrixField stress(g);
    {
        const std::vector<MatrixField> dq = gradient(q);
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) {
                auto o = stress(i, j).physical_overwrite();
                std::fill(o.begin(), o.end(), 0.0);
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        auto qi = dq[static_cast<std::size_t>(i)](k, l).physical();
                        auto qj = dq[static_cast<std::size_t>(j)](k, l).physical();
                        for (std::size_t p = 0; p < o.size(); ++p) o[p] -= qi[p] * qj[p];
                    }
                if (j > i) {
                    auto mirror = stress(j, i).physical_overwrite();
                    std::copy(o.begin(), o.end(), mirror.begin());
                }
            }
        dealias_inplace(stress);
    }
    {
        const std::int64_t np = g.point_count();
        MatrixPhysView qv(q);
        MatrixPhysView wv(w);
        MatrixField extra(g);
        MatrixPhysWriter ew(extra);
        for (std::int64_t p = 0; p < np; ++p) {
            const Mat qm = qv.at(p);
            const Mat wm = wv.at(p);
            ew.set(p, 0.5 * coeffs.mu2 * wm + coeffs.mu1 * commutator(qm, wm));
        }
        dealias_inplace(extra);
        for (std::size_t i = 0; i < stress.components().size(); ++i)
            axpy(stress.components()[i], 1.0, extra.components()[i]);
    }

    VectorField force = divergence(stress);
    leray_project_inplace(force);
    const double grad_q_sq = gradient_l2_sq(q);
    return l2_norm(force) / (1.0 + grad_q_sq);
}

}  // namespace qsh
