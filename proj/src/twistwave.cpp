#include "qsh/twistwave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsh/diagnostics.hpp"
#include "qsh/dynamics.hpp"
#include "qsh/errors.hpp"
#include "qsh/operators.hpp"
#include "qsh/tensor.hpp"

namespace qsh {

namespace {

// Ghost values. Origin: odd extension, pinning f(0) = 0. Outer boundary:
// cubic extrapolation through the last three cells and the Dirichlet zero at
// r = R, exact for cubics so the boundary cell keeps second-order truncation.
inline double ghost_left(std::span<const double> f) { return -f[0]; }
inline double ghost_right(std::span<const double> f) {
    const std::size_t m = f.size();
    return -0.2 * f[m - 3] + f[m - 2] - 3.0 * f[m - 1];
}

double max_abs_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Cubic spline with clamped slope on the left end and natural (zero second
/// derivative) right end. Evaluates to zero outside [x_front, x_back].
class CubicSpline {
  public:
    CubicSpline(std::vector<double> x, std::vector<double> y, double left_slope)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        m_.assign(n, 0.0);
        std::vector<double> diag(n), rhs(n), sub(n), sup(n);
        auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };

        diag[0] = h(0) / 3.0;
        sup[0] = h(0) / 6.0;
        rhs[0] = (y_[1] - y_[0]) / h(0) - left_slope;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            sub[i] = h(i - 1) / 6.0;
            diag[i] = (h(i - 1) + h(i)) / 3.0;
            sup[i] = h(i) / 6.0;
            rhs[i] = (y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1);
        }
        sub[n - 1] = 0.0;
        diag[n - 1] = 1.0;
        rhs[n - 1] = 0.0;  // natural right end

        // Thomas algorithm
        for (std::size_t i = 1; i < n; ++i) {
            const double w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m_[n - 1] = rhs[n - 1] / diag[n - 1];
        for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - sup[i] * m_[i + 1]) / diag[i];
    }

    double operator()(double x) const {
        if (x <= x_.front() || x >= x_.back()) return 0.0;
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double a = (x_[i + 1] - x) / h;
        const double b = (x - x_[i]) / h;
        return a * y_[i] + b * y_[i + 1] +
               ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
    }

  private:
    std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

CubicSpline profile_spline(std::span<const double> values, const RadialGrid& g) {
    std::vector<double> x, y;
    x.reserve(values.size() + 2);
    y.reserve(values.size() + 2);
    x.push_back(0.0);
    y.push_back(0.0);
    for (int j = 0; j < g.cells; ++j) {
        x.push_back(g.r(j));
        y.push_back(values[static_cast<std::size_t>(j)]);
    }
    x.push_back(g.outer_radius);
    y.push_back(0.0);
    return CubicSpline(std::move(x), std::move(y), 0.0);
}

}  // namespace

RadialGrid make_radial_grid(double outer_radius, int cells, int dim) {
    if (!(outer_radius > 0.0)) throw InvalidArgument("radial grid needs R > 0");
    if (cells < 16) throw InvalidArgument("radial grid needs at least 16 cells");
    if (dim != 2 && dim != 3) throw InvalidArgument("radial grid dimension must be 2 or 3");
    return RadialGrid{outer_radius, cells, dim};
}

RadialTendency radial_rhs(const RadialState& state, const Coefficients& coeffs,
                          const RadialGrid& grid) {
    const int m = grid.cells;
    const int d = grid.dim;
    const double h = grid.h();
    RadialTendency out;
    out.df = state.ft;
    out.dft.resize(static_cast<std::size_t>(m));
    const double inv_j = 1.0 / coeffs.J;
    const double b_coef = coeffs.b * (d - 2) / static_cast<double>(d);
    const double c_coef = coeffs.c * (d - 1) / static_cast<double>(d);
    for (int j = 0; j < m; ++j) {
        const double fj = state.f[static_cast<std::size_t>(j)];
        const double fm = j == 0 ? ghost_left(state.f) : state.f[static_cast<std::size_t>(j) - 1];
        const double fp = j == m - 1 ? ghost_right(state.f) : state.f[static_cast<std::size_t>(j) + 1];
        const double r = grid.r(j);
        const double frr = (fp - 2.0 * fj + fm) / (h * h);
        const double fr = (fp - fm) / (2.0 * h);
        const double lap = coeffs.L * (frr + (d - 1) * fr / r - 2.0 * d * fj / (r * r));
        out.dft[static_cast<std::size_t>(j)] =
            inv_j * (-coeffs.mu1 * state.ft[static_cast<std::size_t>(j)] + lap - coeffs.a * fj +
                     b_coef * fj * fj - c_coef * fj * fj * fj);
    }
    return out;
}

OriginDiagnostics origin_diagnostics(std::span<const double> f, const RadialGrid& grid) {
    // quadratic through the first three cell centers, evaluated at r = 0
    const double h = grid.h();
    OriginDiagnostics d;
    d.f0 = 1.875 * f[0] - 1.25 * f[1] + 0.375 * f[2];
    d.fr0 = (-2.0 * f[0] + 3.0 * f[1] - f[2]) / h;
    return d;
}

RadialState radial_step(const RadialState& state, const Coefficients& coeffs,
                        const RadialGrid& grid, double dt) {
    if (!(dt > 0.0)) throw InvalidArgument("radial_step requires dt > 0");
    const std::size_t m = state.f.size();

    auto plus = [&](const RadialState& s, const RadialTendency& k, double a) {
        RadialState out;
        out.t = s.t;
        out.f.resize(m);
        out.ft.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            out.f[j] = s.f[j] + a * k.df[j];
            out.ft[j] = s.ft[j] + a * k.dft[j];
        }
        return out;
    };

    const RadialTendency k1 = radial_rhs(state, coeffs, grid);
    const RadialTendency k2 = radial_rhs(plus(state, k1, 0.5 * dt), coeffs, grid);
    const RadialTendency k3 = radial_rhs(plus(state, k2, 0.5 * dt), coeffs, grid);
    const RadialTendency k4 = radial_rhs(plus(state, k3, dt), coeffs, grid);

    RadialState out;
    out.t = state.t + dt;
    out.f.resize(m);
    out.ft.resize(m);
    const double h6 = dt / 6.0;
    for (std::size_t j = 0; j < m; ++j) {
        out.f[j] = state.f[j] + h6 * (k1.df[j] + 2.0 * k2.df[j] + 2.0 * k3.df[j] + k4.df[j]);
        out.ft[j] = state.ft[j] + h6 * (k1.dft[j] + 2.0 * k2.dft[j] + 2.0 * k3.dft[j] + k4.dft[j]);
    }
    for (std::size_t j = 0; j < m; ++j)
        if (!std::isfinite(out.f[j]) || !std::isfinite(out.ft[j]))
            throw NonFiniteError("radial profile became non-finite", state.t);

    // gross origin-consistency guard; the fine-grained O(h^2) check is a
    // diagnostic, not a step invariant
    const double fmax = max_abs_of(out.f);
    const double hh = grid.h() * grid.h();
    if (fmax > 0.0) {
        const OriginDiagnostics od = origin_diagnostics(out.f, grid);
        if (std::abs(od.f0) > std::max(0.05, 100.0 * hh) * fmax + 1e-12)
            throw NonFiniteError("origin condition f(t,0)=0 lost", state.t);
    }
    return out;
}

double radial_cfl_dt(const RadialGrid& grid, const Coefficients& coeffs, double safety) {
    const double h = grid.h();
    double dt = std::numeric_limits<double>::infinity();
    if (coeffs.L > 0.0 && coeffs.J > 0.0) {
        dt = std::min(dt, h / std::sqrt(coeffs.L / coeffs.J));
        // origin cell: the 2dL/(J r0^2) restoring term is the stiffest mode
        const double r0 = grid.r(0);
        dt = std::min(dt, r0 * std::sqrt(coeffs.J / (2.0 * grid.dim * coeffs.L)));
    }
    const double damp = coeffs.mu1 / coeffs.J + std::abs(coeffs.a);
    if (damp > 0.0) dt = std::min(dt, 1.0 / damp);
    return safety * dt;
}

RadialEnergy radial_energy(const RadialState& state, const Coefficients& coeffs,
                           const RadialGrid& grid) {
    const int m = grid.cells;
    const int d = grid.dim;
    const double h = grid.h();
    RadialEnergy out;
    const double bh = coeffs.b * (d - 2) / (3.0 * d);
    const double ch = coeffs.c * (d - 1) / (4.0 * d);
    for (int j = 0; j < m; ++j) {
        const double fj = state.f[static_cast<std::size_t>(j)];
        const double fm = j == 0 ? ghost_left(state.f) : state.f[static_cast<std::size_t>(j) - 1];
        const double fp = j == m - 1 ? ghost_right(state.f) : state.f[static_cast<std::size_t>(j) + 1];
        const double fr = (fp - fm) / (2.0 * h);
        const double ftj = state.ft[static_cast<std::size_t>(j)];
        const double r = grid.r(j);
        const double hb = 0.5 * coeffs.a * fj * fj - bh * fj * fj * fj + ch * fj * fj * fj * fj;
        const double density = 0.5 * coeffs.J * ftj * ftj + 0.5 * coeffs.L * fr * fr + hb +
                               coeffs.L * d * fj * fj / (r * r);
        out.energy += density * r * r * h;
        out.dissipation_rate += coeffs.mu1 * ftj * ftj * r * r * h;
    }
    return out;
}

std::pair<MatrixField, MatrixField> lift_to_tensor(const RadialState& state,
                                                   const RadialGrid& rgrid, const Grid& grid,
                                                   const std::array<double, 3>& center) {
    if (rgrid.dim != grid.dim) throw ShapeMismatch("radial and torus grids disagree in dimension");
    const double usable = std::min(rgrid.outer_radius, 0.5 * grid.domain_length - 2.0 * grid.spacing());
    const double fmax = std::max(max_abs_of(state.f), 1e-300);
    const double ftmax = std::max(max_abs_of(state.ft), 1e-300);
    for (int j = 0; j < rgrid.cells; ++j) {
        if (rgrid.r(j) < usable) continue;
        if (std::abs(state.f[static_cast<std::size_t>(j)]) > 1e-12 * fmax ||
            std::abs(state.ft[static_cast<std::size_t>(j)]) > 1e-12 * ftmax)
            throw InvalidArgument("radial profile does not fit the torus without wrap contamination");
    }

    const CubicSpline sf = profile_spline(state.f, rgrid);
    const CubicSpline sft = profile_spline(state.ft, rgrid);

    const int d = grid.dim;
    const int n = grid.n;
    const double h = grid.spacing();
    const double half_l = 0.5 * grid.domain_length;
    MatrixField q(grid);
    MatrixField w(grid);
    MatrixPhysWriter qw(q);
    MatrixPhysWriter ww(w);

    auto min_image = [&](double delta) {
        while (delta >= half_l) delta -= grid.domain_length;
        while (delta < -half_l) delta += grid.domain_length;
        return delta;
    };

    std::array<int, 3> idx{0, 0, 0};
    const int n2 = d == 3 ? n : 1;
    std::int64_t p = 0;
    for (int i0 = 0; i0 < n; ++i0) {
        idx[0] = i0;
        for (int i1 = 0; i1 < n; ++i1) {
            idx[1] = i1;
            for (int i2 = 0; i2 < n2; ++i2, ++p) {
                idx[2] = i2;
                std::array<double, 3> dx{0.0, 0.0, 0.0};
                double r2 = 0.0;
                for (int a = 0; a < d; ++a) {
                    dx[static_cast<std::size_t>(a)] =
                        min_image(idx[static_cast<std::size_t>(a)] * h - center[static_cast<std::size_t>(a)]);
                    r2 += dx[static_cast<std::size_t>(a)] * dx[static_cast<std::size_t>(a)];
                }
                const double r = std::sqrt(r2);
                if (r < 1e-14 || r >= rgrid.outer_radius) {
                    qw.set(p, Mat(d));
                    ww.set(p, Mat(d));
                    continue;
                }
                const Mat hh = hedgehog(dx, d);
                qw.set(p, sf(r) * hh);
                ww.set(p, sft(r) * hh);
            }
        }
    }
    return {std::move(q), std::move(w)};
}

std::vector<std::pair<double, double>> extract_profile(const MatrixField& q,
                                                       const std::array<double, 3>& center) {
    const Grid& g = q.grid();
    const double h = g.spacing();
    const int n = g.n;
    std::array<std::int64_t, 3> stride{0, 0, 0};
    if (g.dim == 2) {
        stride = {n, 1, 0};
    } else {
        stride = {static_cast<std::int64_t>(n) * n, n, 1};
    }
    std::array<std::int64_t, 3> c{};
    for (int a = 0; a < g.dim; ++a) {
        const double ci = center[static_cast<std::size_t>(a)] / h;
        c[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::llround(ci));
        if (std::abs(ci - static_cast<double>(c[static_cast<std::size_t>(a)])) > 1e-9)
            throw InvalidArgument("extract_profile requires a grid-aligned center");
    }
    std::int64_t base = 0;
    for (int a = 0; a < g.dim; ++a) base += c[static_cast<std::size_t>(a)] * stride[static_cast<std::size_t>(a)];
    auto q00 = q(0, 0).physical();
    const double scale = 1.0 / (1.0 - 1.0 / g.dim);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n / 2));
    for (int k = 0; k < n / 2; ++k) {
        const std::int64_t i0 = (c[0] + k) % n;
        const std::int64_t p = i0 * stride[0] + c[1] * stride[1] + c[2] * stride[2];
        out.emplace_back(k * h, q00[static_cast<std::size_t>(p)] * scale);
    }
    return out;
}

CompareReport compare_full_vs_radial(const RadialState& initial, const Coefficients& coeffs,
                                     const Grid& grid, const RadialGrid& rgrid, double t_end,
                                     const CompareOptions& opts) {
    CompareReport report;
    if (grid.dim == 3)
        report.warnings.push_back("d = 3 comparison: only local-in-time existence is covered; "
                                  "results are exploratory");
    if (!(t_end > 0.0)) throw InvalidArgument("compare_full_vs_radial requires t_end > 0");

    std::array<double, 3> center = opts.center;
    if (center[0] == 0.0 && center[1] == 0.0 && center[2] == 0.0)
        for (int a = 0; a < grid.dim; ++a) center[static_cast<std::size_t>(a)] = 0.5 * grid.domain_length;

    RadialState radial = initial;
    auto [q0, w0] = lift_to_tensor(radial, rgrid, grid, center);
    SimState full(grid);
    full.q = std::move(q0);
    full.w = std::move(w0);
    full.t = initial.t;

    const double dt_r = opts.dt_radial > 0.0 ? opts.dt_radial : radial_cfl_dt(rgrid, coeffs);
    // velocity is frozen, so the Newtonian viscous limit does not bind
    Coefficients cfl_coeffs = coeffs;
    cfl_coeffs.beta4 = 0.0;
    const double dt_f = opts.dt_full > 0.0 ? opts.dt_full : 0.5 * cfl_dt(full, cfl_coeffs);

    StepOptions sopts;
    sopts.frozen_velocity = true;

    auto track_origin = [&]() {
        const OriginDiagnostics od = origin_diagnostics(radial.f, rgrid);
        report.max_origin_value = std::max(report.max_origin_value, std::abs(od.f0));
        report.max_origin_slope = std::max(report.max_origin_slope, std::abs(od.fr0));
    };
    track_origin();

    {
        const double r0 = twist_constraint_residual(full.q, full.w, coeffs);
        report.max_constraint_residual = r0;
        report.samples.push_back({full.t, 0.0, r0, r0});
    }

    const int samples = std::max(1, opts.samples);
    for (int k = 1; k <= samples; ++k) {
        const double target = initial.t + t_end * static_cast<double>(k) / samples;

        const int nr = std::max(1, static_cast<int>(std::ceil((target - radial.t) / dt_r - 1e-12)));
        const double hr = (target - radial.t) / nr;
        for (int s = 0; s < nr; ++s) {
            radial = radial_step(radial, coeffs, rgrid, hr);
            track_origin();
        }

        const int nf = std::max(1, static_cast<int>(std::ceil((target - full.t) / dt_f - 1e-12)));
        const double hf = (target - full.t) / nf;
        for (int s = 0; s < nf; ++s) full = step_rk4(full, coeffs, hf, sopts);

        auto [qr, wr] = lift_to_tensor(radial, rgrid, grid, center);
        MatrixField diff = full.q;
        axpy(diff, -1.0, qr);
        CompareSample sample;
        sample.t = full.t;
        sample.l2_discrepancy = l2_norm(diff);
        sample.residual_full = twist_constraint_residual(full.q, full.w, coeffs);
        sample.residual_radial = twist_constraint_residual(qr, wr, coeffs);
        report.max_constraint_residual =
            std::max({report.max_constraint_residual, sample.residual_full, sample.residual_radial});
        report.samples.push_back(sample);
    }
    report.final_discrepancy = report.samples.back().l2_discrepancy;
    return report;
}

}  // namespace qsh
