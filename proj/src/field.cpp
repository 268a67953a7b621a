#include "qsh/field.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "qsh/errors.hpp"

namespace qsh {

Grid make_grid(int dim, int n, double domain_length) {
    if (dim != 2 && dim != 3) throw InvalidArgument("grid dimension must be 2 or 3");
    if (n < 8 || n % 2 != 0) throw InvalidArgument("grid points per axis must be even and >= 8");
    if (!(domain_length > 0.0)) throw InvalidArgument("domain_length must be positive");
    return Grid{dim, n, domain_length};
}

ScalarField::ScalarField(const Grid& grid)
    : grid_(grid),
      phys_(static_cast<std::size_t>(grid.point_count()), 0.0),
      spec_(static_cast<std::size_t>(grid.spec_count())) {}

void ScalarField::to_physical() const {
    if (phys_ok_) return;
    Fft::for_grid(grid_).backward(spec_.data(), phys_.data());
    phys_ok_ = true;
}

void ScalarField::to_spectral() const {
    if (spec_ok_) return;
    Fft::for_grid(grid_).forward(phys_.data(), spec_.data());
    spec_ok_ = true;
}

std::span<const double> ScalarField::physical() const {
    to_physical();
    return phys_;
}

std::span<double> ScalarField::physical_mut() {
    to_physical();
    spec_ok_ = false;
    return phys_;
}

std::span<const std::complex<double>> ScalarField::spectral() const {
    to_spectral();
    return spec_;
}

std::span<std::complex<double>> ScalarField::spectral_mut() {
    to_spectral();
    phys_ok_ = false;
    return spec_;
}

std::span<double> ScalarField::physical_overwrite() {
    phys_ok_ = true;
    spec_ok_ = false;
    return phys_;
}

std::span<std::complex<double>> ScalarField::spectral_overwrite() {
    spec_ok_ = true;
    phys_ok_ = false;
    return spec_;
}

void ScalarField::fill(double value) {
    std::fill(phys_.begin(), phys_.end(), value);
    phys_ok_ = true;
    spec_ok_ = false;
}

VectorField::VectorField(const Grid& grid) : grid_(grid) {
    comps_.reserve(static_cast<std::size_t>(grid.dim));
    for (int i = 0; i < grid.dim; ++i) comps_.emplace_back(grid);
}

MatrixField::MatrixField(const Grid& grid) : grid_(grid) {
    comps_.reserve(static_cast<std::size_t>(grid.dim) * grid.dim);
    for (int i = 0; i < grid.dim * grid.dim; ++i) comps_.emplace_back(grid);
}

MatrixPhysView::MatrixPhysView(const MatrixField& m) : dim(m.dim()) {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) ptr[static_cast<std::size_t>(i) * 3 + j] = m(i, j).physical().data();
}

MatrixPhysWriter::MatrixPhysWriter(MatrixField& m) : dim(m.dim()) {
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) ptr[static_cast<std::size_t>(i) * 3 + j] = m(i, j).physical_mut().data();
}

void project_symmetric_traceless_inplace(MatrixField& m) {
    const int d = m.dim();
    const std::int64_t np = m.grid().point_count();
    MatrixPhysWriter w(m);
    for (std::int64_t p = 0; p < np; ++p) {
        Mat q(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) q(i, j) = w.ptr[static_cast<std::size_t>(i) * 3 + j][p];
        w.set(p, project_symmetric_traceless(q));
    }
}

bool all_finite(const ScalarField& f) {
    for (double v : f.physical())
        if (!std::isfinite(v)) return false;
    return true;
}

bool all_finite(const VectorField& f) {
    for (const auto& c : f.components())
        if (!all_finite(c)) return false;
    return true;
}

bool all_finite(const MatrixField& f) {
    for (const auto& c : f.components())
        if (!all_finite(c)) return false;
    return true;
}

void axpy(ScalarField& y, double a, const ScalarField& x) {
    auto yp = y.physical_mut();
    auto xp = x.physical();
    for (std::size_t i = 0; i < yp.size(); ++i) yp[i] += a * xp[i];
}

void axpy(VectorField& y, double a, const VectorField& x) {
    for (int i = 0; i < y.dim(); ++i) axpy(y[i], a, x[i]);
    y.divergence_free = y.divergence_free && x.divergence_free;
}

void axpy(MatrixField& y, double a, const MatrixField& x) {
    for (std::size_t i = 0; i < y.components().size(); ++i)
        axpy(y.components()[i], a, x.components()[i]);
}

void scale(ScalarField& f, double a) {
    for (double& v : f.physical_mut()) v *= a;
}

void scale(VectorField& f, double a) {
    for (auto& c : f.components()) scale(c, a);
}

void scale(MatrixField& f, double a) {
    for (auto& c : f.components()) scale(c, a);
}

}  // namespace qsh
