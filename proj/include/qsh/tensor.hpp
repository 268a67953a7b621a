#ifndef QSH_TENSOR_HPP
#define QSH_TENSOR_HPP

#include <array>
#include <cstddef>

#include "qsh/coefficients.hpp"

namespace qsh {

/// Dense d x d matrix with d in {2, 3}, stored on the stack. Pointwise values
/// of Q-tensors, strain rates and stresses all use this type; operations are
/// pure and reentrant so they can be mapped over grid points freely.
class Mat {
  public:
    Mat() = default;
    explicit Mat(int dim) : d_(dim) {}

    static Mat identity(int dim) {
        Mat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return d_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * 3 + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * 3 + j]; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

  private:
    int d_ = 2;
    std::array<double, 9> a_{};
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);
Mat operator*(const Mat& a, const Mat& b);  // matrix product

double trace(const Mat& m);
Mat transpose(const Mat& m);
double frobenius_norm(const Mat& m);

/// tr(AB) = sum_ij A_ij B_ji; the paper's A:B pairing.
double double_contract(const Mat& a, const Mat& b);

/// [A, B] = AB - BA.
Mat commutator(const Mat& a, const Mat& b);

/// (M + M^T)/2 - tr(M)/d I. Idempotent; identity on symmetric traceless input.
Mat project_symmetric_traceless(const Mat& m);

/// psi_B(Q) = a/2 tr(Q^2) - b/3 tr(Q^3) + c/4 (tr Q^2)^2.
double bulk_potential(const Mat& q, const Coefficients& coeffs);

/// Bulk reaction of the Q-equation: -aQ + b(Q^2 - |Q|^2/d I) - c Q |Q|^2.
/// Equals minus the trace-free projection of d(psi_B)/dQ.
Mat reaction_term(const Mat& q, const Coefficients& coeffs);

/// Hedgehog tensor x_i x_j / |x|^2 - delta_ij / d. Rejects x = 0.
Mat hedgehog(const std::array<double, 3>& x, int dim);

}  // namespace qsh

#endif
