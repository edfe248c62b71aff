#include <doctest.h>

#include <cmath>

#include "gres/criteria.hpp"
#include "gres/fock.hpp"
#include "test_support.hpp"

using namespace gres;

namespace {

Matrix diag2(double x, double p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = x;
    m(1, 1) = p;
    return m;
}

Matrix tmsv(double r) {
    const double c = std::cosh(2 * r), s = std::sinh(2 * r);
    return TwoModeStandardForm{c, c, s, s}.expand().matrix();
}

}  // namespace

TEST_CASE("is_classical") {
    const ClassicalityReport vac = is_classical(CovarianceMatrix(Matrix::Identity(2, 2)));
    CHECK(vac.classical);
    CHECK(std::abs(vac.margin) < 1e-14);
    for (double r : {1e-4, 0.1, 1.0}) CHECK_FALSE(is_classical(CovarianceMatrix(diag2(std::exp(2 * r), std::exp(-2 * r)))).classical);
    CHECK(is_classical(CovarianceMatrix(2.0 * Matrix::Identity(4, 4))).classical);
    CHECK_THROWS_AS(is_classical(CovarianceMatrix(diag2(0.5, 0.5))), Error);
}

TEST_CASE("classical states are physical") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 60; ++k) {
        const int n = 1 + k % 3;
        const Matrix g = gres::testing::random_physical_cm(n, rng, 0.3, 3.0);
        if (is_classical(CovarianceMatrix(g)).classical) CHECK(is_physical(g).physical);
    }
}

TEST_CASE("classicality verdict is invariant under passive transforms") {
    CHECK(classicality_invariance_check(CovarianceMatrix(2.0 * Matrix::Identity(4, 4)), symmetric_diagonalizer(2)));
    std::mt19937_64 rng(17);
    const Matrix sq = diag2(std::exp(0.6), std::exp(-0.6));
    for (int k = 0; k < 5; ++k)
        CHECK_FALSE(classicality_invariance_check(CovarianceMatrix(sq), gres::testing::random_orthogonal_symplectic(1, rng)));
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 3;
        const Matrix g = gres::testing::random_physical_cm(n, rng, k % 2 ? 0.6 : 0.05, 3.0);
        const Matrix o = gres::testing::random_orthogonal_symplectic(n, rng);
        const bool a = is_classical(CovarianceMatrix(g)).classical;
        const bool b = is_classical(CovarianceMatrix(o * g * o.transpose())).classical;
        CHECK(a == b);
        CHECK_NOTHROW(classicality_invariance_check(CovarianceMatrix(g), o));
    }
    Matrix not_orth = Matrix::Identity(2, 2);
    not_orth(0, 0) = 2.0;
    CHECK_THROWS_AS(classicality_invariance_check(CovarianceMatrix(Matrix::Identity(2, 2)), not_orth), Error);
}

TEST_CASE("separability boundary residual sign") {
    CHECK(std::abs(two_mode_separable_boundary_residual(CovarianceMatrix(Matrix::Identity(4, 4)))) < 1e-12);
    CHECK(two_mode_separable_boundary_residual(CovarianceMatrix(tmsv(0.3))) < 0.0);
    CHECK(two_mode_separable_boundary_residual(CovarianceMatrix(3.0 * Matrix::Identity(4, 4))) > 0.0);
    CHECK_THROWS_AS(two_mode_separable_boundary_residual(CovarianceMatrix(Matrix::Identity(2, 2))), Error);
}

TEST_CASE("separability residual agrees with the partial transpose check") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unu(1.0, 3.0), ur(0.0, 1.0);
    int checked = 0;
    while (checked < 20) {
        const TwoModeStandardForm s = gres::testing::squeezed_thermal(unu(rng), unu(rng), ur(rng));
        const double res = two_mode_separable_boundary_residual(s.expand());
        if (std::abs(res) < 1e-8) continue;
        CHECK((res > 0.0) == ppt_partial_transpose_check(s.expand()));
        ++checked;
    }
}

TEST_CASE("full separability of symmetric states") {
    CHECK(is_fully_separable_symmetric({3, 2.0, 2.0, 0.5, 0.1}));
    CHECK(is_fully_separable_symmetric({3, 1.0, 1.0, 0.0, 0.0}));
    CHECK_FALSE(is_fully_separable_symmetric({4, 1.2, 1.2, 1.0, 0.3}));
}

TEST_CASE("classical boundary expansion") {
    FreeStateParams p;
    p.n = 2;
    p.a = {1.0, 1.0};
    p.b = {1.0, 1.0};
    CHECK((classical_boundary_expand(p).matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);

    p.a = {2.0, 1.7};
    p.b = {1.5, 2.2};
    p.kappa = 1.0;
    const Matrix g = classical_boundary_expand(p).matrix();
    CHECK(g(0, 1) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    Eigen::SelfAdjointEigenSolver<Matrix> es(g - Matrix::Identity(4, 4));
    CHECK(std::abs(es.eigenvalues().minCoeff()) < 1e-10);

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(1.0, 5.0), uk(-1.0, 1.0);
    for (int k = 0; k < 30; ++k) {
        p.n = 1 + k % 2;
        p.a.assign(p.n, 0.0);
        p.b.assign(p.n, 0.0);
        for (int i = 0; i < p.n; ++i) p.a[i] = u(rng), p.b[i] = u(rng);
        p.kappa = k % 3 == 0 ? 1.0 : uk(rng);
        const Matrix m = classical_boundary_expand(p).matrix();
        const int dim = 2 * p.n;
        if (p.kappa == 1.0) CHECK(std::abs((m - Matrix::Identity(dim, dim)).determinant()) < 1e-8);
        CHECK(is_classical(CovarianceMatrix(m)).classical);
        if (p.n == 2) CHECK(ppt_partial_transpose_check(CovarianceMatrix(m)));
    }

    p.n = 1;
    p.a = {0.5};
    p.b = {2.0};
    CHECK_THROWS_AS(classical_boundary_expand(p), Error);
}

TEST_CASE("separable boundary roots lie on the boundary") {
    const double a1 = 2.4, b1 = 2.0, c1 = 1.6, a2 = 2.6, b2 = 2.1;
    const auto roots = separable_boundary_roots(a1, b1, c1, a2, b2);
    REQUIRE(!roots.empty());
    for (double c2 : roots) {
        Matrix g = Matrix::Zero(4, 4);
        g << a1, c1, 0, 0,
             c1, b1, 0, 0,
             0, 0, a2, -c2,
             0, 0, -c2, b2;
        CHECK(std::abs(two_mode_separable_boundary_residual(CovarianceMatrix(g))) < 1e-9);
    }
}

TEST_CASE("partial transpose flips the second momentum") {
    const Matrix g = tmsv(0.4);
    const Matrix pt = partial_transpose(g, 1);
    CHECK(pt(0, 1) == g(0, 1));
    CHECK(pt(2, 3) == -g(2, 3));
    CHECK_FALSE(ppt_partial_transpose_check(CovarianceMatrix(g)));
    CHECK(ppt_partial_transpose_check(CovarianceMatrix(2.0 * Matrix::Identity(4, 4))));
}
