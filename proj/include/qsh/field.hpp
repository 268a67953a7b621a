#ifndef QSH_FIELD_HPP
#define QSH_FIELD_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "qsh/detail/pool.hpp"
#include "qsh/grid.hpp"
#include "qsh/tensor.hpp"

namespace qsh {

/// Scalar field keeping physical samples and spectral coefficients in sync
/// lazily. At least one representation is always valid; transforms happen on
/// demand and both stay valid until a mutating accessor invalidates one.
/// Spectral coefficients are true Fourier coefficients:
///   f(x) = sum_k fhat(k) exp(i k.x),
/// so the inverse transform is the plain unnormalized FFTW backward pass.
class ScalarField {
  public:
    explicit ScalarField(const Grid& grid);

    ScalarField(const ScalarField& o);
    ScalarField& operator=(const ScalarField& o);
    ScalarField(ScalarField&&) noexcept = default;
    ScalarField& operator=(ScalarField&&) noexcept = default;

    const Grid& grid() const { return grid_; }

    void to_physical() const;
    void to_spectral() const;

    std::span<const double> physical() const;
    std::span<double> physical_mut();  // invalidates spectral
    std::span<const std::complex<double>> spectral() const;
    std::span<std::complex<double>> spectral_mut();  // invalidates physical

    /// Buffers handed out for wholesale overwrite, skipping the transform the
    /// _mut accessors would run. Caller must fill every entry.
    std::span<double> physical_overwrite();
    std::span<std::complex<double>> spectral_overwrite();

    bool physical_valid() const { return phys_ok_; }
    bool spectral_valid() const { return spec_ok_; }

    void fill(double value);

  private:
    Grid grid_;
    mutable std::vector<double> phys_;
    mutable std::vector<std::complex<double>> spec_;
    mutable bool phys_ok_ = true;
    mutable bool spec_ok_ = false;
};

/// d velocity-like components on a shared grid.
class VectorField {
  public:
    explicit VectorField(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim; }

    ScalarField& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
    const ScalarField& operator[](int i) const { return comps_[static_cast<std::size_t>(i)]; }

    std::span<ScalarField> components() { return comps_; }
    std::span<const ScalarField> components() const { return comps_; }

    /// Set only by leray_project; cleared by mutating operations.
    bool divergence_free = false;

  private:
    Grid grid_;
    std::vector<ScalarField> comps_;
};

/// d x d matrix-valued field (Q-tensors, strain/vorticity, stresses).
class MatrixField {
  public:
    explicit MatrixField(const Grid& grid);

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim; }

    ScalarField& operator()(int i, int j) { return comps_[static_cast<std::size_t>(i) * grid_.dim + j]; }
    const ScalarField& operator()(int i, int j) const {
        return comps_[static_cast<std::size_t>(i) * grid_.dim + j];
    }

    std::span<ScalarField> components() { return comps_; }
    std::span<const ScalarField> components() const { return comps_; }

  private:
    Grid grid_;
    std::vector<ScalarField> comps_;
};

/// Read-only view of the physical arrays of a matrix field, for tight
/// pointwise loops.
struct MatrixPhysView {
    explicit MatrixPhysView(const MatrixField& m);
    Mat at(std::int64_t p) const {
        Mat out(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) out(i, j) = ptr[static_cast<std::size_t>(i) * 3 + j][p];
        return out;
    }
    int dim;
    std::array<const double*, 9> ptr{};
};

/// Mutable counterpart of MatrixPhysView.
struct MatrixPhysWriter {
    explicit MatrixPhysWriter(MatrixField& m);
    void set(std::int64_t p, const Mat& value) const {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) ptr[static_cast<std::size_t>(i) * 3 + j][p] = value(i, j);
    }
    int dim;
    std::array<double*, 9> ptr{};
};

/// Pointwise (M + M^T)/2 - tr(M)/d I over the whole field.
void project_symmetric_traceless_inplace(MatrixField& m);

bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& f);
bool all_finite(const MatrixField& f);

// y += a*x in physical space.
void axpy(ScalarField& y, double a, const ScalarField& x);
void axpy(VectorField& y, double a, const VectorField& x);
void axpy(MatrixField& y, double a, const MatrixField& x);

void scale(ScalarField& f, double a);
void scale(VectorField& f, double a);
void scale(MatrixField& f, double a);

}  // namespace qsh

#endif
