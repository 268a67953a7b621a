#include "qsh/tensor.hpp"

#include <cmath>

#include "qsh/errors.hpp"

namespace qsh {

Mat& Mat::operator+=(const Mat& o) {
    for (std::size_t i = 0; i < 9; ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    for (std::size_t i = 0; i < 9; ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (std::size_t i = 0; i < 9; ++i) a_[i] *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

Mat operator*(const Mat& a, const Mat& b) {
    const int d = a.dim();
    Mat out(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double s = 0.0;
            for (int l = 0; l < d; ++l) s += a(i, l) * b(l, j);
            out(i, j) = s;
        }
    return out;
}

double trace(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i) s += m(i, i);
    return s;
}

Mat transpose(const Mat& m) {
    Mat out(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) out(i, j) = m(j, i);
    return out;
}

double frobenius_norm(const Mat& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

double double_contract(const Mat& a, const Mat& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
    return s;
}

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

Mat project_symmetric_traceless(const Mat& m) {
    const int d = m.dim();
    Mat out(d);
    const double mean_trace = trace(m) / d;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) out(i, j) = 0.5 * (m(i, j) + m(j, i));
        out(i, i) -= mean_trace;
    }
    return out;
}

double bulk_potential(const Mat& q, const Coefficients& coeffs) {
    const Mat q2 = q * q;
    const double tr2 = trace(q2);
    const double tr3 = trace(q2 * q);
    return 0.5 * coeffs.a * tr2 - coeffs.b / 3.0 * tr3 + 0.25 * coeffs.c * tr2 * tr2;
}

Mat reaction_term(const Mat& q, const Coefficients& coeffs) {
    const int d = q.dim();
    const Mat q2 = q * q;
    const double norm2 = trace(q2);
    Mat out = -coeffs.a * q + coeffs.b * q2 - (coeffs.c * norm2) * q;
    // traceless correction of the b-term, exactly as in the Q-equation
    const double shift = coeffs.b * norm2 / d;
    for (int i = 0; i < d; ++i) out(i, i) -= shift;
    return out;
}

Mat hedgehog(const std::array<double, 3>& x, int dim) {
    double r2 = 0.0;
    for (int i = 0; i < dim; ++i) r2 += x[i] * x[i];
    if (r2 <= 0.0) throw InvalidArgument("hedgehog is singular at x = 0");
    Mat out(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) out(i, j) = x[i] * x[j] / r2;
        out(i, i) -= 1.0 / dim;
    }
    return out;
}

}  // namespace qsh
