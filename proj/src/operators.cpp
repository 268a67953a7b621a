#include "qsh/operators.hpp"

#include <algorithm>
#include <cmath>

#include "qsh/errors.hpp"

namespace qsh {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw ShapeMismatch("fields live on different grids");
}

}  // namespace

ScalarField derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    ScalarField out(g);
    auto in = f.spectral();
    auto o = out.spectral_overwrite();
    const double ku = g.k_unit();
    const int half = g.n / 2;
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double) {
        const int ma = m[static_cast<std::size_t>(axis)];
        const double k = std::abs(ma) == half ? 0.0 : ku * ma;
        const std::complex<double> v = in[idx];
        o[idx] = std::complex<double>(-k * v.imag(), k * v.real());
    });
    return out;
}

VectorField gradient(const ScalarField& f) {
    VectorField out(f.grid());
    for (int a = 0; a < f.grid().dim; ++a) out[a] = derivative(f, a);
    return out;
}

MatrixField gradient(const VectorField& v) {
    MatrixField out(v.grid());
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) out(i, j) = derivative(v[i], j);
    return out;
}

std::vector<MatrixField> gradient(const MatrixField& q) {
    std::vector<MatrixField> out;
    out.reserve(static_cast<std::size_t>(q.dim()));
    for (int a = 0; a < q.dim(); ++a) {
        MatrixField d(q.grid());
        for (int i = 0; i < q.dim(); ++i)
            for (int j = 0; j < q.dim(); ++j) d(i, j) = derivative(q(i, j), a);
        out.push_back(std::move(d));
    }
    return out;
}

VectorField divergence(const MatrixField& m) {
    const Grid& g = m.grid();
    const int d = g.dim;
    VectorField out(g);
    const double ku = g.k_unit();
    const int half = g.n / 2;
    for (int i = 0; i < d; ++i) {
        std::array<std::span<const std::complex<double>>, 3> row;
        for (int j = 0; j < d; ++j) row[static_cast<std::size_t>(j)] = m(i, j).spectral();
        auto o = out[i].spectral_overwrite();
        for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& mm, double) {
            std::complex<double> s{0.0, 0.0};
            for (int j = 0; j < d; ++j) {
                const int mj = mm[static_cast<std::size_t>(j)];
                const double k = std::abs(mj) == half ? 0.0 : ku * mj;
                const std::complex<double> v = row[static_cast<std::size_t>(j)][idx];
                s += std::complex<double>(-k * v.imag(), k * v.real());
            }
            o[idx] = s;
        });
    }
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    ScalarField out(g);
    auto in = f.spectral();
    auto o = out.spectral_overwrite();
    const double ku2 = g.k_unit() * g.k_unit();
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double) {
        o[idx] = -ku2 * mode_norm_sq(m) * in[idx];
    });
    return out;
}

VectorField laplacian(const VectorField& f) {
    VectorField out(f.grid());
    for (int i = 0; i < f.dim(); ++i) out[i] = laplacian(f[i]);
    return out;
}

MatrixField laplacian(const MatrixField& f) {
    MatrixField out(f.grid());
    for (int i = 0; i < f.dim(); ++i)
        for (int j = 0; j < f.dim(); ++j) out(i, j) = laplacian(f(i, j));
    return out;
}

void leray_project_inplace(VectorField& v) {
    const Grid& g = v.grid();
    const int d = g.dim;
    std::array<std::complex<double>*, 3> c{};
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = v[i].spectral_mut().data();
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double) {
        const double k2 = mode_norm_sq(m);
        if (k2 == 0.0) return;
        std::complex<double> kv{0.0, 0.0};
        for (int a = 0; a < d; ++a) kv += static_cast<double>(m[static_cast<std::size_t>(a)]) * c[static_cast<std::size_t>(a)][idx];
        kv /= k2;
        for (int a = 0; a < d; ++a) c[static_cast<std::size_t>(a)][idx] -= static_cast<double>(m[static_cast<std::size_t>(a)]) * kv;
    });
    v.divergence_free = true;
}

VectorField leray_project(VectorField v) {
    leray_project_inplace(v);
    return v;
}

void mollify_inplace(ScalarField& f, int n_cut) {
    const Grid& g = f.grid();
    auto c = f.spectral_mut();
    const double ku2 = g.k_unit() * g.k_unit();
    const double cut_sq = std::pow(2.0, 2.0 * n_cut) * (1.0 + 1e-12);
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double) {
        if (ku2 * mode_norm_sq(m) > cut_sq) c[idx] = {0.0, 0.0};
    });
}

void mollify_inplace(VectorField& f, int n_cut) {
    for (auto& comp : f.components()) mollify_inplace(comp, n_cut);
}

void mollify_inplace(MatrixField& f, int n_cut) {
    for (auto& comp : f.components()) mollify_inplace(comp, n_cut);
}

ScalarField mollify(ScalarField f, int n_cut) {
    mollify_inplace(f, n_cut);
    return f;
}

void dealias_inplace(ScalarField& f) {
    const Grid& g = f.grid();
    auto c = f.spectral_mut();
    const int n = g.n;
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double) {
        if (3 * std::abs(m[0]) > n || 3 * std::abs(m[1]) > n || 3 * std::abs(m[2]) > n)
            c[idx] = {0.0, 0.0};
    });
}

void dealias_inplace(VectorField& f) {
    for (auto& comp : f.components()) dealias_inplace(comp);
}

void dealias_inplace(MatrixField& f) {
    for (auto& comp : f.components()) dealias_inplace(comp);
}

ScalarField dealias(ScalarField f) {
    dealias_inplace(f);
    return f;
}

void truncate_product(ScalarField& f, int mollifier_cut) {
    dealias_inplace(f);
    if (mollifier_cut >= 0) mollify_inplace(f, mollifier_cut);
}

void truncate_product(VectorField& f, int mollifier_cut) {
    for (auto& comp : f.components()) truncate_product(comp, mollifier_cut);
}

void truncate_product(MatrixField& f, int mollifier_cut) {
    for (auto& comp : f.components()) truncate_product(comp, mollifier_cut);
}

namespace {

double sobolev_sq(const ScalarField& f, double s) {
    const Grid& g = f.grid();
    auto c = f.spectral();
    const double ku2 = g.k_unit() * g.k_unit();
    double acc = 0.0;
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double w) {
        const double k2 = ku2 * mode_norm_sq(m);
        const double weight = s == 0.0 ? 1.0 : 1.0 + std::pow(k2, s);
        acc += w * weight * std::norm(c[idx]);
    });
    return g.volume() * acc;
}

double sobolev_grad_sq(const ScalarField& f, double s) {
    const Grid& g = f.grid();
    auto c = f.spectral();
    const double ku2 = g.k_unit() * g.k_unit();
    double acc = 0.0;
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& m, double w) {
        const double k2 = ku2 * mode_norm_sq(m);
        const double weight = s == 0.0 ? 1.0 : 1.0 + std::pow(k2, s);
        acc += w * weight * k2 * std::norm(c[idx]);
    });
    return g.volume() * acc;
}

}  // namespace

double sobolev_norm(const ScalarField& f, double s) {
    if (s < 0.0) throw InvalidArgument("sobolev_norm requires s >= 0");
    return std::sqrt(sobolev_sq(f, s));
}

double sobolev_norm(const VectorField& f, double s) {
    if (s < 0.0) throw InvalidArgument("sobolev_norm requires s >= 0");
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_sq(comp, s);
    return std::sqrt(acc);
}

double sobolev_norm(const MatrixField& f, double s) {
    if (s < 0.0) throw InvalidArgument("sobolev_norm requires s >= 0");
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_sq(comp, s);
    return std::sqrt(acc);
}

double sobolev_norm_of_gradient(const ScalarField& f, double s) {
    return std::sqrt(sobolev_grad_sq(f, s));
}

double sobolev_norm_of_gradient(const VectorField& f, double s) {
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_grad_sq(comp, s);
    return std::sqrt(acc);
}

double sobolev_norm_of_gradient(const MatrixField& f, double s) {
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_grad_sq(comp, s);
    return std::sqrt(acc);
}

double inner_product_l2(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid(), g.grid());
    auto a = f.physical();
    auto b = g.physical();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc * f.grid().volume() / static_cast<double>(f.grid().point_count());
}

double inner_product_l2(const VectorField& f, const VectorField& g) {
    require_same_grid(f.grid(), g.grid());
    double acc = 0.0;
    for (int i = 0; i < f.dim(); ++i) acc += inner_product_l2(f[i], g[i]);
    return acc;
}

double inner_product_l2(const MatrixField& f, const MatrixField& g) {
    require_same_grid(f.grid(), g.grid());
    double acc = 0.0;
    for (std::size_t i = 0; i < f.components().size(); ++i)
        acc += inner_product_l2(f.components()[i], g.components()[i]);
    return acc;
}

double l2_norm_sq(const ScalarField& f) { return sobolev_sq(f, 0.0); }

double l2_norm_sq(const VectorField& f) {
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_sq(comp, 0.0);
    return acc;
}

double l2_norm_sq(const MatrixField& f) {
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_sq(comp, 0.0);
    return acc;
}

double l2_norm(const ScalarField& f) { return std::sqrt(l2_norm_sq(f)); }
double l2_norm(const VectorField& f) { return std::sqrt(l2_norm_sq(f)); }
double l2_norm(const MatrixField& f) { return std::sqrt(l2_norm_sq(f)); }

double gradient_l2_sq(const ScalarField& f) { return sobolev_grad_sq(f, 0.0); }

double gradient_l2_sq(const VectorField& f) {
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_grad_sq(comp, 0.0);
    return acc;
}

double gradient_l2_sq(const MatrixField& f) {
    double acc = 0.0;
    for (const auto& comp : f.components()) acc += sobolev_grad_sq(comp, 0.0);
    return acc;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.physical()) m = std::max(m, std::abs(v));
    return m;
}

double max_pointwise_norm(const VectorField& f) {
    const std::int64_t np = f.grid().point_count();
    std::array<std::span<const double>, 3> p;
    for (int i = 0; i < f.dim(); ++i) p[static_cast<std::size_t>(i)] = f[i].physical();
    double m = 0.0;
    for (std::int64_t i = 0; i < np; ++i) {
        double s = 0.0;
        for (int a = 0; a < f.dim(); ++a) s += p[static_cast<std::size_t>(a)][i] * p[static_cast<std::size_t>(a)][i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double max_pointwise_norm(const MatrixField& f) {
    const std::int64_t np = f.grid().point_count();
    const auto comps = f.components();
    std::vector<std::span<const double>> p;
    p.reserve(comps.size());
    for (const auto& c : comps) p.push_back(c.physical());
    double m = 0.0;
    for (std::int64_t i = 0; i < np; ++i) {
        double s = 0.0;
        for (const auto& comp : p) s += comp[i] * comp[i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double divergence_max_abs(const VectorField& v) {
    const Grid& g = v.grid();
    const int d = g.dim;
    std::array<std::span<const std::complex<double>>, 3> c;
    for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = v[i].spectral();
    const double ku = g.k_unit();
    const int half = g.n / 2;
    double m = 0.0;
    for_each_mode(g, [&](std::int64_t idx, const std::array<int, 3>& mm, double) {
        std::complex<double> s{0.0, 0.0};
        for (int a = 0; a < d; ++a) {
            const int ma = mm[static_cast<std::size_t>(a)];
            const double k = std::abs(ma) == half ? 0.0 : ku * ma;
            const std::complex<double> val = c[static_cast<std::size_t>(a)][idx];
            s += std::complex<double>(-k * val.imag(), k * val.real());
        }
        m = std::max(m, std::abs(s));
    });
    return m;
}

}  // namespace qsh
