#ifndef QSH_OPERATORS_HPP
#define QSH_OPERATORS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qsh/field.hpp"
#include "qsh/grid.hpp"

namespace qsh {

/// Visit every stored spectral coefficient. The callback receives the flat
/// index, the integer modes m (unused trailing entries are zero; the last
/// used axis is the real-to-complex half axis with m >= 0), and the Hermitian
/// multiplicity weight (1 on the self-conjugate planes m_last = 0 and n/2,
/// else 2) for Parseval sums over the half spectrum.
template <class F>
inline void for_each_mode(const Grid& g, F&& fn) {
    const int n = g.n;
    const int half = n / 2;
    auto fold = [n, half](int i) { return i <= half ? (i == half ? -half : i) : i - n; };
    std::int64_t idx = 0;
    if (g.dim == 2) {
        for (int i0 = 0; i0 < n; ++i0) {
            const int m0 = fold(i0);
            for (int i1 = 0; i1 <= half; ++i1, ++idx)
                fn(idx, std::array<int, 3>{m0, i1, 0}, (i1 == 0 || i1 == half) ? 1.0 : 2.0);
        }
    } else {
        for (int i0 = 0; i0 < n; ++i0) {
            const int m0 = fold(i0);
            for (int i1 = 0; i1 < n; ++i1) {
                const int m1 = fold(i1);
                for (int i2 = 0; i2 <= half; ++i2, ++idx)
                    fn(idx, std::array<int, 3>{m0, m1, i2}, (i2 == 0 || i2 == half) ? 1.0 : 2.0);
            }
        }
    }
}

inline double mode_norm_sq(const std::array<int, 3>& m) {
    return static_cast<double>(m[0]) * m[0] + static_cast<double>(m[1]) * m[1] +
           static_cast<double>(m[2]) * m[2];
}

/// Spectral differentiation along one axis. The Nyquist plane carries no sign
/// information for odd derivatives and is dropped (multiplier zero).
ScalarField derivative(const ScalarField& f, int axis);

VectorField gradient(const ScalarField& f);
/// (grad v)_ij = dv_i/dx_j.
MatrixField gradient(const VectorField& v);
/// grad[axis](i, j) = d Q_ij / dx_axis.
std::vector<MatrixField> gradient(const MatrixField& q);

/// Row-wise divergence (div M)_i = d M_ij / dx_j.
VectorField divergence(const MatrixField& m);

ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& f);
MatrixField laplacian(const MatrixField& f);

/// Per mode k != 0: vhat -= k (k.vhat)/|k|^2; k = 0 untouched. Idempotent.
void leray_project_inplace(VectorField& v);
VectorField leray_project(VectorField v);

/// Sharp Fourier cutoff: zero every coefficient with |k| > 2^n_cut. The mean
/// mode stays (the lower dyadic cutoff is vacuous on a torus).
void mollify_inplace(ScalarField& f, int n_cut);
void mollify_inplace(VectorField& f, int n_cut);
void mollify_inplace(MatrixField& f, int n_cut);
ScalarField mollify(ScalarField f, int n_cut);

/// 2/3-rule truncation: zero coefficients with any |m_i| > n/3.
void dealias_inplace(ScalarField& f);
void dealias_inplace(VectorField& f);
void dealias_inplace(MatrixField& f);
ScalarField dealias(ScalarField f);

/// Post-product truncation: dealias always, then the sharp mollifier when
/// mollifier_cut >= 0.
void truncate_product(ScalarField& f, int mollifier_cut);
void truncate_product(VectorField& f, int mollifier_cut);
void truncate_product(MatrixField& f, int mollifier_cut);

/// sqrt( V sum_k (1 + |k|^{2s}) |fhat|^2 ) for s > 0; the plain L2 norm at
/// s = 0. Rejects s < 0. Multi-component overloads sum squares.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& f, double s);
double sobolev_norm(const MatrixField& f, double s);

/// H^s norm of the gradient, evaluated spectrally without forming it.
double sobolev_norm_of_gradient(const ScalarField& f, double s);
double sobolev_norm_of_gradient(const VectorField& f, double s);
double sobolev_norm_of_gradient(const MatrixField& f, double s);

/// Physical-space quadrature (V/N) sum f g; exact for band-limited data.
double inner_product_l2(const ScalarField& f, const ScalarField& g);
double inner_product_l2(const VectorField& f, const VectorField& g);
double inner_product_l2(const MatrixField& f, const MatrixField& g);

double l2_norm_sq(const ScalarField& f);
double l2_norm_sq(const VectorField& f);
double l2_norm_sq(const MatrixField& f);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double l2_norm(const MatrixField& f);

/// integral |grad f|^2, spectrally.
double gradient_l2_sq(const ScalarField& f);
double gradient_l2_sq(const VectorField& f);
double gradient_l2_sq(const MatrixField& f);

double max_abs(const ScalarField& f);
/// max over points of the Euclidean / Frobenius pointwise norm.
double max_pointwise_norm(const VectorField& f);
double max_pointwise_norm(const MatrixField& f);

/// max_k |div v|^ of the spectral divergence, for invariant checks.
double divergence_max_abs(const VectorField& v);

}  // namespace qsh

#endif
