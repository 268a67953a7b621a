#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsh/diagnostics.hpp"
#include "qsh/dynamics.hpp"
#include "qsh/errors.hpp"
#include "qsh/presets.hpp"
#include "qsh/tensor.hpp"
#include "test_support.hpp"

using namespace qsh;
using qsh::test::random_state;
using qsh::test::random_sym_traceless_field;

namespace {

const double kPi = std::numbers::pi;

Coefficients decay_coeffs() {
    Coefficients c;
    c.a = 1.0;
    c.b = 0.0;
    c.c = 1.0;
    c.L = 1.0;
    c.J = 0.1;
    c.mu1 = 1.0;
    c.mu2 = 0.0;
    c.mu2_tilde = 0.0;
    c.beta1 = 0.1;
    c.beta4 = 5.0;
    c.beta5 = 0.0;
    c.beta6 = 0.0;
    c.dim = 2;
    return c;
}

}  // namespace

TEST_CASE("energy_breakdown: closed-form pieces") {
    // zero state
    {
        const Grid g = make_grid(2, 32, 2.0 * kPi);
        SimState s(g);
        const EnergyBreakdown e = energy_breakdown(s, decay_coeffs());
        CHECK(e.total == 0.0);
        CHECK(e.kinetic == 0.0);
        CHECK(e.dissipation_rotational == 0.0);
    }

    // constant uniaxial Q in d = 3: bulk = volume * 10/27, all else zero
    {
        const Grid g = make_grid(3, 16, 2.0 * kPi);
        Coefficients c = decay_coeffs();
        c.dim = 3;
        c.a = c.b = c.c = 1.0;
        SimState s(g);
        Mat uni(3);
        uni(0, 0) = 2.0 / 3.0;
        uni(1, 1) = -1.0 / 3.0;
        uni(2, 2) = -1.0 / 3.0;
        MatrixPhysWriter w(s.q);
        for (std::int64_t p = 0; p < g.point_count(); ++p) w.set(p, uni);
        const EnergyBreakdown e = energy_breakdown(s, c);
        CHECK(e.bulk == doctest::Approx(g.volume() * 10.0 / 27.0).epsilon(1e-12));
        CHECK(e.kinetic == 0.0);
        CHECK(e.rotational == 0.0);
        CHECK(e.elastic <= 1e-20);
        CHECK(e.total == doctest::Approx(e.bulk));
    }

    // single shear mode: kinetic = volume / 4
    {
        const Grid g = make_grid(2, 32, 2.0 * kPi);
        SimState s(g);
        auto p = s.v[0].physical_mut();
        const double h = g.spacing();
        std::int64_t idx = 0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j, ++idx) p[idx] = std::sin(j * h);
        const EnergyBreakdown e = energy_breakdown(s, decay_coeffs());
        CHECK(e.kinetic == doctest::Approx(g.volume() / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("energy_breakdown: total re-sums and the elastic flag scales") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    std::mt19937_64 rng(3);
    const SimState s = random_state(g, rng, g.dealias_limit(), 0.4);
    const Coefficients c = decay_coeffs();
    const EnergyBreakdown e = energy_breakdown(s, c);
    CHECK(e.total == doctest::Approx(e.kinetic + e.rotational + e.elastic + e.bulk).epsilon(1e-14));
    const EnergyBreakdown q = energy_breakdown(s, c, ElasticFactor::Quarter);
    CHECK(e.elastic == doctest::Approx(2.0 * q.elastic).epsilon(1e-13));
    CHECK(e.kinetic == doctest::Approx(q.kinetic));
}

TEST_CASE("dissipation terms are non-negative for admissible coefficients") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    std::mt19937_64 rng(5);
    const Coefficients c = decay_coeffs();
    for (int k = 0; k < 25; ++k) {
        const SimState s = random_state(g, rng, g.dealias_limit(), 1.0);
        const EnergyBreakdown e = energy_breakdown(s, c);
        CHECK(e.dissipation_newtonian >= -1e-14);
        CHECK(e.dissipation_beta1 >= -1e-14);
        CHECK(e.dissipation_rotational >= -1e-14);
    }
}

TEST_CASE("mu2 cross terms collapse to mu2_tilde <A, N> when mu2_tilde = -mu2") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    std::mt19937_64 rng(7);
    Coefficients c = decay_coeffs();
    c.mu2 = 0.8;
    c.mu2_tilde = -0.8;
    for (int k = 0; k < 10; ++k) {
        const SimState s = random_state(g, rng, g.dealias_limit(), 0.7);
        const EnergyBreakdown e = energy_breakdown(s, c);
        auto [a, omega] = strain_rotation(s.v);
        const MatrixField n = corotational_flux(s.q, s.w, omega);
        const double direct = c.mu2_tilde * inner_product_l2(a, n);
        const double combined = e.cross_mu2tilde + e.cross_mu2;
        CHECK(combined == doctest::Approx(direct).epsilon(1e-10));
    }
    // and to zero when both vanish
    c.mu2 = c.mu2_tilde = 0.0;
    const SimState s = random_state(g, rng, 5, 0.7);
    const EnergyBreakdown e = energy_breakdown(s, c);
    CHECK(e.cross_mu2tilde == 0.0);
    CHECK(e.cross_mu2 == 0.0);
}

TEST_CASE("energy_law_residual: equilibrium and input validation") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    SimState s(g);
    const EnergyBreakdown e = energy_breakdown(s, decay_coeffs());
    std::vector<EnergyBreakdown> hist{e, e, e, e};
    const std::vector<double> r = energy_law_residual(hist, 0.01);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0]) <= 1e-15);
    CHECK(std::abs(r[1]) <= 1e-15);

    std::vector<EnergyBreakdown> short_hist{e, e};
    CHECK_THROWS_AS(energy_law_residual(short_hist, 0.01), InvalidArgument);
}

TEST_CASE("energy_law_residual shrinks >= 3.5x under dt halving") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    const Coefficients c = decay_coeffs();
    InitialData init;
    init.preset = "random_smooth";
    init.amplitude = 0.1;
    init.envelope_modes = 3.0;
    const SimState s0 = initial_data_preset(init, g, 11);

    auto max_residual = [&](double dt, int steps) {
        SimState s = s0;
        std::vector<EnergyBreakdown> hist;
        hist.push_back(energy_breakdown(s, c));
        for (int k = 0; k < steps; ++k) {
            s = step_rk4(s, c, dt);
            hist.push_back(energy_breakdown(s, c));
        }
        double worst = 0.0;
        for (double r : energy_law_residual(hist, dt)) worst = std::max(worst, std::abs(r));
        return worst;
    };

    const double dt = 2e-3;
    const double coarse = max_residual(dt, 24);
    const double fine = max_residual(0.5 * dt, 48);
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("second_energy_terms") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    Coefficients c = decay_coeffs();
    c.mu2_tilde = -0.5;

    SimState zero(g);
    const SecondEnergyTerms z = second_energy_terms(zero, c);
    CHECK(z.functional == 0.0);
    CHECK(z.p_q == 0.0);
    CHECK(z.cross_aq == 0.0);

    // W = Q: functional = 1/2 (3J + mu1 - J) |Q|^2 quadrature
    std::mt19937_64 rng(11);
    SimState s(g);
    s.q = random_sym_traceless_field(g, rng, 6, 0.8);
    s.w = s.q;
    const SecondEnergyTerms t = second_energy_terms(s, c);
    const double q_sq = inner_product_l2(s.q, s.q);
    CHECK(t.functional == doctest::Approx(0.5 * (2.0 * c.J + c.mu1) * q_sq).epsilon(1e-12));
    CHECK(t.j_qdot_sq == doctest::Approx(c.J * q_sq).epsilon(1e-12));

    // d = 2: the b term of P(Q) vanishes identically
    Coefficients cb = c;
    cb.b = 7.0;
    const SecondEnergyTerms tb = second_energy_terms(s, cb);
    CHECK(tb.p_q == doctest::Approx(t.p_q).epsilon(1e-13));
}

TEST_CASE("lyapunov_monitor") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    SimState zero(g);
    const LyapunovMonitor z = lyapunov_monitor(zero, 2.0);
    CHECK(z.phi == 0.0);
    CHECK(z.psi == 0.0);
    CHECK_FALSE(z.low_s_warning);
    CHECK(lyapunov_monitor(zero, 0.5).low_s_warning);

    // single mode |k|^2 = 5 in Q only, s = 2:
    // phi = (1+25)|Q|^2 + 5(1+25)|Q|^2 = 156 |Q|^2
    SimState s(g);
    {
        auto p = s.q(0, 1).physical_mut();
        const double h = g.spacing();
        std::int64_t idx = 0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j, ++idx) p[idx] = 0.3 * std::cos(2.0 * i * h + j * h);
        s.q(1, 0) = s.q(0, 1);
    }
    const double q_sq = inner_product_l2(s.q, s.q);
    const LyapunovMonitor m = lyapunov_monitor(s, 2.0);
    CHECK(m.phi == doctest::Approx(156.0 * q_sq).epsilon(1e-11));
    CHECK(m.psi == doctest::Approx(156.0 * q_sq).epsilon(1e-11));

    // phi dominates the plain kinetic norm
    std::mt19937_64 rng(13);
    const SimState r = random_state(g, rng, 6, 0.5);
    CHECK(lyapunov_monitor(r, 2.0).phi >= l2_norm_sq(r.v) - 1e-13);
}

TEST_CASE("twist_constraint_residual") {
    const Grid g = make_grid(2, 64, 2.0 * kPi);
    Coefficients c = decay_coeffs();
    c.mu2 = -1.0;
    c.mu1 = 0.9;

    // constant Q, zero W
    SimState s(g);
    MatrixPhysWriter w(s.q);
    Mat uni(2);
    uni(0, 0) = 0.3;
    uni(1, 1) = -0.3;
    for (std::int64_t p = 0; p < g.point_count(); ++p) w.set(p, uni);
    CHECK(twist_constraint_residual(s.q, s.w, c) <= 1e-13);

    // lifted hedgehog bump: the force is a pure gradient
    InitialData init;
    init.preset = "hedgehog_bump";
    init.amplitude = 0.8;
    init.width = 0.45;
    init.ft_amplitude = 0.3;
    const SimState hb = initial_data_preset(init, g, 1);
    CHECK(twist_constraint_residual(hb.q, hb.w, c) <= 1e-6);

    // generic fields are far from the constraint set
    std::mt19937_64 rng(17);
    const MatrixField q = random_sym_traceless_field(g, rng, 6, 0.8);
    const MatrixField wr = random_sym_traceless_field(g, rng, 6, 0.8);
    CHECK(twist_constraint_residual(q, wr, c) > 1e-4);
}

TEST_CASE("coercivity witness along a trajectory") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    Coefficients c = decay_coeffs();
    c.a = -0.5;  // negative a so the witness is non-trivial
    c.b = 0.0;
    const double mu_bar = validate_coercivity(c);
    std::mt19937_64 rng(19);
    SimState s = random_state(g, rng, g.dealias_limit(), 0.3);
    for (int k = 0; k < 10; ++k) {
        s = step_rk4(s, c, 5e-4);
        const EnergyBreakdown e = energy_breakdown(s, c);
        const double witness = mu_bar * l2_norm_sq(s.q) + 4.0 * e.bulk;
        CHECK(witness >= -1e-10);
    }
}

TEST_CASE("total energy is non-increasing in the decay regime (short run)") {
    const Grid g = make_grid(2, 32, 2.0 * kPi);
    const Coefficients c = decay_coeffs();
    InitialData init;
    init.preset = "random_smooth";
    init.amplitude = 0.1;
    SimState s = initial_data_preset(init, g, 23);
    EnergyBreakdown e = energy_breakdown(s, c);
    const double e0 = e.total;
    double prev = e.total;
    const double dt = 0.5 * cfl_dt(s, c);
    for (int k = 0; k < 100; ++k) {
        s = step_rk4(s, c, dt);
        e = energy_breakdown(s, c);
        CHECK(e.total - prev <= 1e-8 * e0);
        prev = e.total;
    }
    CHECK(e.total < e0);
}
