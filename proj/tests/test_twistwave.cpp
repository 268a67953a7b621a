#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qsh/diagnostics.hpp"
#include "qsh/errors.hpp"
#include "qsh/tensor.hpp"
#include "qsh/twistwave.hpp"
#include "test_support.hpp"

using namespace qsh;
using qsh::test::observed_order;

namespace {

Coefficients wave_coeffs() {
    Coefficients c;
    c.a = 1.0;
    c.b = 0.0;
    c.c = 1.0;
    c.L = 1.0;
    c.J = 0.5;
    c.mu1 = 1.0;
    c.beta4 = 1.0;
    c.dim = 2;
    return c;
}

RadialState gaussian_bump(const RadialGrid& g, double amplitude, double width,
                          double ft_amplitude = 0.0) {
    RadialState s;
    s.f.resize(static_cast<std::size_t>(g.cells));
    s.ft.resize(static_cast<std::size_t>(g.cells));
    for (int j = 0; j < g.cells; ++j) {
        const double r = g.r(j);
        const double shape = r * r * std::exp(-(r / width) * (r / width));
        s.f[static_cast<std::size_t>(j)] = amplitude * shape;
        s.ft[static_cast<std::size_t>(j)] = ft_amplitude * shape;
    }
    return s;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Dense LU solve with partial pivoting, for the inverse-iteration oracle.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

}  // namespace

TEST_CASE("radial grid validation") {
    CHECK_THROWS_AS(make_radial_grid(-1.0, 64, 2), InvalidArgument);
    CHECK_THROWS_AS(make_radial_grid(1.0, 8, 2), InvalidArgument);
    CHECK_THROWS_AS(make_radial_grid(1.0, 64, 5), InvalidArgument);
    const RadialGrid g = make_radial_grid(2.0, 64, 3);
    CHECK(g.r(0) == doctest::Approx(0.5 * g.h()));
}

TEST_CASE("radial_rhs: zero state and vanished b coefficient in d = 2") {
    const RadialGrid g = make_radial_grid(2.0, 64, 2);
    Coefficients c = wave_coeffs();

    RadialState zero;
    zero.f.assign(64, 0.0);
    zero.ft.assign(64, 0.0);
    const RadialTendency t = radial_rhs(zero, c, g);
    for (double v : t.df) CHECK(v == 0.0);
    for (double v : t.dft) CHECK(v == 0.0);

    const RadialState s = gaussian_bump(g, 0.7, 0.5, 0.2);
    Coefficients cb = c;
    cb.b = 7.0;
    const RadialTendency t0 = radial_rhs(s, c, g);
    const RadialTendency t7 = radial_rhs(s, cb, g);
    CHECK(max_abs_diff(t0.dft, t7.dft) == 0.0);  // (d-2)/d kills b exactly
}

TEST_CASE("radial_rhs: second-order convergence against the analytic operator") {
    // smooth profile with f(0) = f_r(0) = 0 and a double zero at R
    const double R = 2.0;
    const Coefficients c = wave_coeffs();
    auto f = [R](double r) { return r * r * (R - r) * (R - r) * std::exp(-r); };
    auto fp = [R](double r) {
        return std::exp(-r) * (2.0 * r * (R - r) * (R - r) - 2.0 * r * r * (R - r) -
                               r * r * (R - r) * (R - r));
    };
    auto fpp = [R, fp](double r) {
        const double h = 1e-6;  // analytic second derivative via tight FD of f'
        return (fp(r + h) - fp(r - h)) / (2.0 * h);
    };

    // error in the r^2-weighted L2 norm, the equation's natural norm; the
    // odd-extension origin cell is O(h) pointwise for odd powers of r but
    // carries negligible weight there
    const int d = 2;
    std::vector<double> errors;
    for (const int m : {64, 128, 256, 512}) {
        const RadialGrid g = make_radial_grid(R, m, d);
        RadialState s;
        s.f.resize(static_cast<std::size_t>(m));
        s.ft.assign(static_cast<std::size_t>(m), 0.0);
        for (int j = 0; j < m; ++j) s.f[static_cast<std::size_t>(j)] = f(g.r(j));
        const RadialTendency t = radial_rhs(s, c, g);
        double err_sq = 0.0;
        for (int j = 0; j < m; ++j) {
            const double r = g.r(j);
            const double lap = c.L * (fpp(r) + (d - 1) * fp(r) / r - 2.0 * d * f(r) / (r * r));
            const double exact = (lap - c.a * f(r) -
                                  c.c * (d - 1) / d * f(r) * f(r) * f(r)) / c.J;
            const double e = t.dft[static_cast<std::size_t>(j)] - exact;
            err_sq += e * e * r * r * g.h();
        }
        errors.push_back(std::sqrt(err_sq));
    }
    CHECK(observed_order(errors) >= 1.9);
}

TEST_CASE("radial_step: zero fixed point and eigenmode integrator order") {
    const double R = 2.0;
    const int m = 48;
    const RadialGrid g = make_radial_grid(R, m, 2);
    Coefficients c = wave_coeffs();
    c.mu1 = 0.2;
    c.J = 1.0;
    c.b = 0.0;
    c.c = 0.0;  // linear problem

    RadialState zero;
    zero.f.assign(m, 0.0);
    zero.ft.assign(m, 0.0);
    const RadialState z1 = radial_step(zero, c, g, 0.01);
    for (double v : z1.f) CHECK(v == 0.0);

    // probe the discrete linear operator A with J dft = A f (ft = 0)
    std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
    for (int j = 0; j < m; ++j) {
        RadialState probe = zero;
        probe.f[static_cast<std::size_t>(j)] = 1.0;
        const RadialTendency t = radial_rhs(probe, c, g);
        for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            c.J * t.dft[static_cast<std::size_t>(i)];
    }

    // inverse iteration for the fundamental (smallest |lambda|) mode
    std::vector<double> phi(m, 1.0);
    double lambda = 0.0;
    for (int it = 0; it < 60; ++it) {
        std::vector<double> next = solve_dense(a, phi);
        double norm = 0.0;
        for (double v : next) norm = std::max(norm, std::abs(v));
        for (double& v : next) v /= norm;
        phi = next;
    }
    {
        // Rayleigh quotient and residual gate
        std::vector<double> aphi(m, 0.0);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j)
                aphi[static_cast<std::size_t>(i)] +=
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * phi[static_cast<std::size_t>(j)];
            num += aphi[static_cast<std::size_t>(i)] * phi[static_cast<std::size_t>(i)];
            den += phi[static_cast<std::size_t>(i)] * phi[static_cast<std::size_t>(i)];
        }
        lambda = num / den;
        double resid = 0.0;
        for (int i = 0; i < m; ++i)
            resid = std::max(resid, std::abs(aphi[static_cast<std::size_t>(i)] - lambda * phi[static_cast<std::size_t>(i)]));
        REQUIRE(resid <= 1e-9 * std::abs(lambda));
    }
    REQUIRE(lambda < 0.0);

    const double k_stiff = -lambda;
    const double q0 = 0.3, w0 = -0.1;
    qsh::test::DampedOscillator exact(c.J, c.mu1, k_stiff, q0, w0);

    const double t_end = 0.4;
    std::vector<double> errors;
    for (const int steps : {40, 80, 160, 320}) {
        RadialState s;
        s.f.resize(static_cast<std::size_t>(m));
        s.ft.resize(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            s.f[static_cast<std::size_t>(j)] = q0 * phi[static_cast<std::size_t>(j)];
            s.ft[static_cast<std::size_t>(j)] = w0 * phi[static_cast<std::size_t>(j)];
        }
        const double dt = t_end / steps;
        for (int k = 0; k < steps; ++k) s = radial_step(s, c, g, dt);
        // compare at the largest-|phi| cell (phi normalized to max 1)
        double err = 0.0;
        const double qt = exact.value(t_end);
        for (int j = 0; j < m; ++j)
            err = std::max(err, std::abs(s.f[static_cast<std::size_t>(j)] - qt * phi[static_cast<std::size_t>(j)]));
        errors.push_back(err);
    }
    CHECK(observed_order(errors) >= 3.8);
}

TEST_CASE("radial damped wave decays for small data") {
    const RadialGrid g = make_radial_grid(2.0, 128, 2);
    const Coefficients c = wave_coeffs();
    RadialState s = gaussian_bump(g, 0.05, 0.4);
    const double e0 = radial_energy(s, c, g).energy;
    REQUIRE(e0 > 0.0);
    const double dt = radial_cfl_dt(g, c);
    double t = 0.0;
    while (t < 5.0) {
        s = radial_step(s, c, g, dt);
        t += dt;
    }
    const double e1 = radial_energy(s, c, g).energy;
    CHECK(e1 < 0.05 * e0);
}

TEST_CASE("radial_energy: trivial cases") {
    const RadialGrid g = make_radial_grid(2.0, 64, 3);
    const Coefficients c = wave_coeffs();
    RadialState zero;
    zero.f.assign(64, 0.0);
    zero.ft.assign(64, 0.0);
    const RadialEnergy e = radial_energy(zero, c, g);
    CHECK(e.energy == 0.0);
    CHECK(e.dissipation_rate == 0.0);

    RadialState stat = gaussian_bump(g, 0.5, 0.4);
    const RadialEnergy es = radial_energy(stat, c, g);
    CHECK(es.dissipation_rate == 0.0);  // ft = 0
    CHECK(es.energy > 0.0);
}

TEST_CASE("radial energy balance converges at order >= 1.9 in h (d = 3)") {
    const double R = 2.0;
    Coefficients c = wave_coeffs();
    c.dim = 3;
    c.b = 0.4;  // exercise the cubic/quartic terms of h_B
    const double dt = 2e-4;  // well below the finest-grid CFL; dt error negligible
    std::vector<double> errors;
    for (const int m : {64, 128, 256}) {
        const RadialGrid g = make_radial_grid(R, m, 3);
        RadialState s = gaussian_bump(g, 0.4, 0.45, 0.3);
        double worst = 0.0;
        RadialEnergy prev = radial_energy(s, c, g);
        for (int k = 0; k < 25; ++k) {
            s = radial_step(s, c, g, dt);
            const RadialEnergy cur = radial_energy(s, c, g);
            const double resid =
                cur.energy - prev.energy + dt * 0.5 * (cur.dissipation_rate + prev.dissipation_rate);
            worst = std::max(worst, std::abs(resid));
            prev = cur;
        }
        errors.push_back(worst);
    }
    CHECK(observed_order(errors) >= 1.9);
}

TEST_CASE("origin conditions hold along trajectories") {
    const RadialGrid g = make_radial_grid(2.0, 256, 2);
    const Coefficients c = wave_coeffs();
    RadialState s = gaussian_bump(g, 0.5, 0.4, 0.2);
    const double dt = radial_cfl_dt(g, c);
    const double hh = g.h() * g.h();
    for (int k = 0; k < 200; ++k) {
        s = radial_step(s, c, g, dt);
        const OriginDiagnostics od = origin_diagnostics(s.f, g);
        CHECK(std::abs(od.f0) <= 10.0 * hh);
        CHECK(std::abs(od.fr0) <= 10.0 * hh);
    }
}

TEST_CASE("d = 2 radial trajectories are independent of b") {
    const RadialGrid g = make_radial_grid(2.0, 64, 2);
    Coefficients c0 = wave_coeffs();
    Coefficients c7 = wave_coeffs();
    c7.b = 7.0;
    RadialState s0 = gaussian_bump(g, 0.5, 0.4);
    RadialState s7 = s0;
    for (int k = 0; k < 50; ++k) {
        s0 = radial_step(s0, c0, g, 1e-3);
        s7 = radial_step(s7, c7, g, 1e-3);
    }
    CHECK(max_abs_diff(s0.f, s7.f) == 0.0);
}

TEST_CASE("lift_to_tensor: zero profile, structure, and commutator") {
    const Grid grid = make_grid(2, 64, 2.0 * std::numbers::pi);
    const RadialGrid rg = make_radial_grid(2.5, 256, 2);
    const std::array<double, 3> center{std::numbers::pi, std::numbers::pi, 0.0};

    RadialState zero;
    zero.f.assign(256, 0.0);
    zero.ft.assign(256, 0.0);
    auto [q0, w0] = lift_to_tensor(zero, rg, grid, center);
    CHECK(max_pointwise_norm(q0) == 0.0);
    CHECK(max_pointwise_norm(w0) == 0.0);

    const RadialState s = gaussian_bump(rg, 0.6, 0.35, 0.4);
    auto [q, w] = lift_to_tensor(s, rg, grid, center);

    // symmetric traceless everywhere, and [Q, W] = 0 (shared eigenframe)
    MatrixPhysView qv(q), wv(w);
    double defect = 0.0, comm = 0.0;
    for (std::int64_t p = 0; p < grid.point_count(); ++p) {
        const Mat qm = qv.at(p);
        defect = std::max(defect, std::abs(trace(qm)));
        defect = std::max(defect, frobenius_norm(qm - transpose(qm)));
        comm = std::max(comm, frobenius_norm(commutator(qm, wv.at(p))));
    }
    CHECK(defect <= 1e-12);
    CHECK(comm <= 1e-13 * (1.0 + max_pointwise_norm(q) * max_pointwise_norm(w)));
}

TEST_CASE("lift/extract round trip at spline accuracy") {
    const Grid grid = make_grid(2, 128, 2.0 * std::numbers::pi);
    const RadialGrid rg = make_radial_grid(2.5, 512, 2);
    const std::array<double, 3> center{std::numbers::pi, std::numbers::pi, 0.0};
    const double amp = 1.0, width = 0.42;
    const RadialState s = gaussian_bump(rg, amp, width);

    auto [q, w] = lift_to_tensor(s, rg, grid, center);
    const auto profile = extract_profile(q, center);
    double worst = 0.0;
    for (const auto& [r, value] : profile) {
        if (r >= rg.outer_radius) continue;
        const double exact = amp * r * r * std::exp(-(r / width) * (r / width));
        worst = std::max(worst, std::abs(value - exact));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("lift rejects profiles that do not fit the torus") {
    const Grid grid = make_grid(2, 32, 2.0 * std::numbers::pi);
    const RadialGrid rg = make_radial_grid(4.0, 128, 2);  // exceeds L/2 - 2h
    RadialState wide = gaussian_bump(rg, 1.0, 2.5);
    CHECK_THROWS_AS(lift_to_tensor(wide, rg, grid, {std::numbers::pi, std::numbers::pi, 0.0}),
                    InvalidArgument);
}

TEST_CASE("compare_full_vs_radial: zero data and a light run") {
    const Grid grid = make_grid(2, 64, 2.0 * std::numbers::pi);
    const RadialGrid rg = make_radial_grid(2.5, 256, 2);
    Coefficients c = wave_coeffs();
    c.L = 0.2;
    c.mu2 = -1.0;

    RadialState zero;
    zero.f.assign(256, 0.0);
    zero.ft.assign(256, 0.0);
    CompareOptions opts;
    opts.samples = 2;
    const CompareReport rz = compare_full_vs_radial(zero, c, grid, rg, 0.1, opts);
    CHECK(rz.final_discrepancy == 0.0);
    CHECK(rz.max_constraint_residual <= 1e-12);

    // width 0.42 keeps the lifted spectrum resolved on a 64^2 grid
    const RadialState s = gaussian_bump(rg, 0.4, 0.42);
    opts.samples = 4;
    const CompareReport r = compare_full_vs_radial(s, c, grid, rg, 0.25, opts);
    CHECK(r.final_discrepancy <= 5e-3);  // coarse radial grid, O(h^2) regime
    CHECK(r.max_constraint_residual <= 1e-5);
    CHECK(r.max_origin_value <= 10.0 * rg.h() * rg.h());
    CHECK(r.warnings.empty());

    const RadialGrid rg3 = make_radial_grid(2.5, 128, 3);
    const Grid grid3 = make_grid(3, 16, 2.0 * std::numbers::pi);
    RadialState zero3;
    zero3.f.assign(128, 0.0);
    zero3.ft.assign(128, 0.0);
    CompareOptions o3;
    o3.samples = 1;
    const CompareReport r3 = compare_full_vs_radial(zero3, c, grid3, rg3, 0.05, o3);
    CHECK(!r3.warnings.empty());
}
