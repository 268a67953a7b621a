#include "qsh/presets.hpp"

#include <cmath>
#include <random>

#include "qsh/errors.hpp"
#include "qsh/operators.hpp"
#include "qsh/snapshot.hpp"
#include "qsh/tensor.hpp"

namespace qsh {

namespace {

double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

// White noise shaped by exp(-|k|^2 / k0^2); RMS normalized to `amplitude`.
void random_smooth_scalar(ScalarField& f, std::mt19937_64& rng, double k0_modes,
                          double amplitude) {
    {
        auto p = f.physical_overwrite();
        for (double& v : p) v = 2.0 * unit_double(rng) - 1.0;
    }
    const Grid& g = f.grid();
    auto c = f.spectral_mut();
    const double inv_k0_sq = 1.0 / (k0_modes * k0_modes);
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double) {
        c[idx] *= std::exp(-mode_norm_sq(m) * inv_k0_sq);
    });
    dealias_inplace(f);
    const double rms = l2_norm(f) / std::sqrt(g.volume());
    if (rms > 0.0) scale(f, amplitude / rms);
}

}  // namespace

SimState initial_data_preset(const InitialData& init, const Grid& grid, std::uint64_t seed) {
    if (!init.snapshot.empty()) return read_snapshot(init.snapshot, grid);

    SimState state(grid);
    const std::string& name = init.preset;
    if (name == "zero") {
        return state;
    }

    if (name == "taylor_green") {
        const double a = init.amplitude;
        const double ku = grid.k_unit();
        const int n = grid.n;
        const double h = grid.spacing();
        if (grid.dim == 2) {
            auto vx = state.v[0].physical_overwrite();
            auto vy = state.v[1].physical_overwrite();
            std::int64_t p = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j, ++p) {
                    const double x = ku * i * h;
                    const double y = ku * j * h;
                    vx[p] = a * std::sin(x) * std::cos(y);
                    vy[p] = -a * std::cos(x) * std::sin(y);
                }
        } else {
            auto vx = state.v[0].physical_overwrite();
            auto vy = state.v[1].physical_overwrite();
            auto vz = state.v[2].physical_overwrite();
            std::int64_t p = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k, ++p) {
                        const double x = ku * i * h;
                        const double y = ku * j * h;
                        const double z = ku * k * h;
                        vx[p] = a * std::sin(x) * std::cos(y) * std::cos(z);
                        vy[p] = -a * std::cos(x) * std::sin(y) * std::cos(z);
                        vz[p] = 0.0;
                    }
        }
        state.v.divergence_free = true;
    } else if (name == "random_smooth") {
        std::mt19937_64 rng(seed);
        for (auto& c : state.v.components())
            random_smooth_scalar(c, rng, init.envelope_modes, init.amplitude);
        for (auto& c : state.q.components())
            random_smooth_scalar(c, rng, init.envelope_modes, init.amplitude);
        for (auto& c : state.w.components())
            random_smooth_scalar(c, rng, init.envelope_modes, init.amplitude);
        leray_project_inplace(state.v);
        project_symmetric_traceless_inplace(state.q);
        project_symmetric_traceless_inplace(state.w);
    } else if (name == "uniaxial_constant") {
        const int d = grid.dim;
        Mat dir(d);
        dir(d - 1, d - 1) = 1.0;  // n = last coordinate axis
        const Mat q = init.scalar_order * project_symmetric_traceless(dir);
        MatrixPhysWriter w(state.q);
        const std::int64_t np = grid.point_count();
        for (std::int64_t p = 0; p < np; ++p) w.set(p, q);
    } else if (name == "hedgehog_bump") {
        // f(r) = amplitude r^2 exp(-(r/width)^2) lifted through the hedgehog;
        // smooth in x since f/r^2 is a smooth even function.
        const int d = grid.dim;
        const int n = grid.n;
        const double h = grid.spacing();
        const double half_l = 0.5 * grid.domain_length;
        const double inv_w2 = 1.0 / (init.width * init.width);
        MatrixPhysWriter qw(state.q);
        MatrixPhysWriter ww(state.w);
        std::array<int, 3> idx{0, 0, 0};
        const int n2 = d == 3 ? n : 1;
        std::int64_t p = 0;
        for (int i0 = 0; i0 < n; ++i0) {
            idx[0] = i0;
            for (int i1 = 0; i1 < n; ++i1) {
                idx[1] = i1;
                for (int i2 = 0; i2 < n2; ++i2, ++p) {
                    idx[2] = i2;
                    double r2 = 0.0;
                    std::array<double, 3> dx{0.0, 0.0, 0.0};
                    for (int a = 0; a < d; ++a) {
                        double delta = idx[static_cast<std::size_t>(a)] * h - half_l;
                        dx[static_cast<std::size_t>(a)] = delta;
                        r2 += delta * delta;
                    }
                    const double env = std::exp(-r2 * inv_w2);
                    Mat shape(d);  // r^2 Hbar(dx) = dx dx^T - r^2/d I, smooth everywhere
                    for (int i = 0; i < d; ++i) {
                        for (int j = 0; j < d; ++j)
                            shape(i, j) = dx[static_cast<std::size_t>(i)] * dx[static_cast<std::size_t>(j)];
                        shape(i, i) -= r2 / d;
                    }
                    qw.set(p, (init.amplitude * env) * shape);
                    ww.set(p, (init.ft_amplitude * env) * shape);
                }
            }
        }
    } else {
        throw InvalidArgument("unknown initial data preset: " + name);
    }

    dealias_inplace(state.v);
    dealias_inplace(state.q);
    dealias_inplace(state.w);
    leray_project_inplace(state.v);
    project_symmetric_traceless_inplace(state.q);
    project_symmetric_traceless_inplace(state.w);
    return state;
}

}  // namespace qsh
