#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qsh/errors.hpp"
#include "qsh/tensor.hpp"
#include "test_support.hpp"

using namespace qsh;
using qsh::test::random_matrix;
using qsh::test::random_sym_traceless;

namespace {

// Independent variational oracle: central finite differences of psi_B over
// the full matrix entries, then the trace-free symmetric projection.
Mat fd_molecular_field(const Mat& q, const Coefficients& c, double h = 1e-5) {
    Mat grad(q.dim());
    for (int i = 0; i < q.dim(); ++i)
        for (int j = 0; j < q.dim(); ++j) {
            Mat plus = q, minus = q;
            plus(i, j) += h;
            minus(i, j) -= h;
            grad(i, j) = (bulk_potential(plus, c) - bulk_potential(minus, c)) / (2.0 * h);
        }
    return project_symmetric_traceless(grad);
}

}  // namespace

TEST_CASE("project_symmetric_traceless basics") {
    // identity is pure trace
    const Mat p = project_symmetric_traceless(Mat::identity(3));
    CHECK(frobenius_norm(p) == doctest::Approx(0.0).epsilon(1e-15));

    // hand-evaluated 2x2 example
    Mat m(2);
    m(0, 0) = 1.0;
    m(0, 1) = 2.0;
    m(1, 0) = 0.0;
    m(1, 1) = 3.0;
    const Mat r = project_symmetric_traceless(m);
    CHECK(r(0, 0) == doctest::Approx(-1.0));
    CHECK(r(0, 1) == doctest::Approx(1.0));
    CHECK(r(1, 0) == doctest::Approx(1.0));
    CHECK(r(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("projection idempotent and fixes symmetric traceless input") {
    std::mt19937_64 rng(7);
    for (int d : {2, 3}) {
        for (int k = 0; k < 200; ++k) {
            const Mat m = random_matrix(rng, d, 5.0);
            const Mat p1 = project_symmetric_traceless(m);
            const Mat p2 = project_symmetric_traceless(p1);
            CHECK(frobenius_norm(p2 - p1) <= 1e-14 * (1.0 + frobenius_norm(p1)));
            CHECK(std::abs(trace(p1)) <= 1e-12 * (1.0 + frobenius_norm(p1)));
            const Mat q = random_sym_traceless(rng, d, 3.0);
            CHECK(frobenius_norm(project_symmetric_traceless(q) - q) <=
                  1e-14 * (1.0 + frobenius_norm(q)));
        }
    }
}

TEST_CASE("commutator") {
    std::mt19937_64 rng(11);
    const Mat a = random_matrix(rng, 3);
    CHECK(frobenius_norm(commutator(a, a)) == doctest::Approx(0.0));
    CHECK(frobenius_norm(commutator(Mat::identity(3), a)) == doctest::Approx(0.0));

    Mat d(2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    Mat b(2);
    b(0, 1) = 1.0;
    b(1, 0) = 1.0;
    const Mat c = commutator(d, b);
    CHECK(c(0, 0) == doctest::Approx(0.0));
    CHECK(c(0, 1) == doctest::Approx(2.0));
    CHECK(c(1, 0) == doctest::Approx(-2.0));
    CHECK(c(1, 1) == doctest::Approx(0.0));

    // [sym, sym] is skew
    const Mat s1 = random_sym_traceless(rng, 3);
    const Mat s2 = random_sym_traceless(rng, 3);
    const Mat k = commutator(s1, s2);
    CHECK(frobenius_norm(k + transpose(k)) <= 1e-13 * (1.0 + frobenius_norm(k)));
}

TEST_CASE("double_contract") {
    CHECK(double_contract(Mat::identity(3), Mat::identity(3)) == doctest::Approx(3.0));

    Mat a(2), b(2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    b(0, 0) = 3.0;
    b(1, 1) = 4.0;
    CHECK(double_contract(a, b) == doctest::Approx(11.0));

    // tr{BC} vanishes for B symmetric, C skew
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const Mat s = random_sym_traceless(rng, 3, 2.0);
        Mat m = random_matrix(rng, 3);
        Mat skew = 0.5 * (m - transpose(m));
        CHECK(std::abs(double_contract(s, skew)) <=
              1e-13 * (1.0 + frobenius_norm(s) * frobenius_norm(skew)));
    }
}

TEST_CASE("bulk_potential values") {
    Coefficients c;
    c.a = 1.0;
    c.b = 1.0;
    c.c = 1.0;

    CHECK(bulk_potential(Mat(3), c) == doctest::Approx(0.0));

    // uniaxial s = 1 state: exact rational value 10/27
    Mat q(3);
    q(0, 0) = 2.0 / 3.0;
    q(1, 1) = -1.0 / 3.0;
    q(2, 2) = -1.0 / 3.0;
    CHECK(bulk_potential(q, c) == doctest::Approx(10.0 / 27.0).epsilon(1e-12));

    // d = 2: independent of b exactly
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const Mat p = random_sym_traceless(rng, 2, 4.0);
        Coefficients c0 = c;
        c0.b = 0.0;
        Coefficients c17 = c;
        c17.b = 17.0;
        CHECK(bulk_potential(p, c0) == bulk_potential(p, c17));
    }
}

TEST_CASE("reaction_term closed forms") {
    Coefficients c;
    c.a = 1.0;
    c.b = 1.0;
    c.c = 1.0;
    c.dim = 3;

    CHECK(frobenius_norm(reaction_term(Mat(3), c)) == doctest::Approx(0.0));

    // b = c = 0 gives -aQ
    std::mt19937_64 rng(17);
    Coefficients lin = c;
    lin.b = 0.0;
    lin.c = 0.0;
    lin.a = 2.5;
    const Mat q = random_sym_traceless(rng, 3);
    CHECK(frobenius_norm(reaction_term(q, lin) + 2.5 * q) <= 1e-13);

    // uniaxial example: diag(-8/9, 4/9, 4/9)
    Mat u(3);
    u(0, 0) = 2.0 / 3.0;
    u(1, 1) = -1.0 / 3.0;
    u(2, 2) = -1.0 / 3.0;
    const Mat r = reaction_term(u, c);
    CHECK(r(0, 0) == doctest::Approx(-8.0 / 9.0).epsilon(1e-12));
    CHECK(r(1, 1) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(r(2, 2) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("reaction_term is symmetric traceless on random input") {
    std::mt19937_64 rng(23);
    Coefficients c;
    c.a = -0.7;
    c.b = 1.3;
    c.c = 0.9;
    for (int d : {2, 3}) {
        c.dim = d;
        for (int k = 0; k < 1000; ++k) {
            const Mat q = random_sym_traceless(rng, d, 10.0);
            const Mat r = reaction_term(q, c);
            const double scale = 1.0 + frobenius_norm(r);
            CHECK(std::abs(trace(r)) <= 1e-12 * scale);
            CHECK(frobenius_norm(r - transpose(r)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("reaction_term equals minus projected grad psi_B (finite differences)") {
    std::mt19937_64 rng(31);
    Coefficients c;
    c.a = 0.8;
    c.b = -1.1;
    c.c = 1.7;
    for (int d : {2, 3}) {
        c.dim = d;
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const Mat q = random_sym_traceless(rng, d, 2.0);
            const Mat expected = -1.0 * fd_molecular_field(q, c);
            const Mat got = reaction_term(q, c);
            const double rel =
                frobenius_norm(got - expected) / (1.0 + frobenius_norm(expected));
            worst = std::max(worst, rel);
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("hedgehog") {
    const Mat h3 = hedgehog({0.0, 0.0, 1.0}, 3);
    CHECK(h3(0, 0) == doctest::Approx(-1.0 / 3.0));
    CHECK(h3(1, 1) == doctest::Approx(-1.0 / 3.0));
    CHECK(h3(2, 2) == doctest::Approx(2.0 / 3.0));

    const Mat h2 = hedgehog({1.0, 0.0, 0.0}, 2);
    CHECK(h2(0, 0) == doctest::Approx(0.5));
    CHECK(h2(1, 1) == doctest::Approx(-0.5));

    const double s = 1.0 / std::sqrt(2.0);
    const Mat hd = hedgehog({s, s, 0.0}, 3);
    CHECK(hd(0, 0) == doctest::Approx(1.0 / 6.0));
    CHECK(hd(0, 1) == doctest::Approx(0.5));
    CHECK(hd(1, 1) == doctest::Approx(1.0 / 6.0));
    CHECK(hd(2, 2) == doctest::Approx(-1.0 / 3.0));

    CHECK_THROWS_AS(hedgehog({0.0, 0.0, 0.0}, 3), InvalidArgument);
}

TEST_CASE("hedgehog eigenvector property") {
    std::mt19937_64 rng(41);
    for (int d : {2, 3}) {
        for (int k = 0; k < 200; ++k) {
            std::array<double, 3> x{0.0, 0.0, 0.0};
            double norm = 0.0;
            while (norm < 1e-3) {
                norm = 0.0;
                for (int i = 0; i < d; ++i) {
                    x[static_cast<std::size_t>(i)] = qsh::test::uniform(rng, -2.0, 2.0);
                    norm += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
                }
                norm = std::sqrt(norm);
            }
            const Mat h = hedgehog(x, d);
            CHECK(std::abs(trace(h)) <= 1e-12);
            // h x = (1 - 1/d) x
            for (int i = 0; i < d; ++i) {
                double hx = 0.0;
                for (int j = 0; j < d; ++j) hx += h(i, j) * x[static_cast<std::size_t>(j)];
                CHECK(hx ==
                      doctest::Approx((1.0 - 1.0 / d) * x[static_cast<std::size_t>(i)]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("Q:Omega = 0 for symmetric traceless Q and skew Omega") {
    std::mt19937_64 rng(53);
    for (int k = 0; k < 200; ++k) {
        const Mat q = random_sym_traceless(rng, 3, 3.0);
        Mat m = random_matrix(rng, 3);
        const Mat omega = 0.5 * (m - transpose(m));
        CHECK(std::abs(double_contract(q, omega)) <=
              1e-13 * (1.0 + frobenius_norm(q) * frobenius_norm(omega)));
    }
}
