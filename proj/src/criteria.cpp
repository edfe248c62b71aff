#include "gres/criteria.hpp"

#include <cmath>

namespace gres {

namespace {

// x-block [[a0,c0],[c0,b0]], p-block [[a1,-c1],[-c1,b1]].
CovarianceMatrix blocks(double a0, double b0, double c0, double a1, double b1, double c1) {
    Matrix g = Matrix::Zero(4, 4);
    g << a0, c0, 0, 0,
         c0, b0, 0, 0,
         0, 0, a1, -c1,
         0, 0, -c1, b1;
    return CovarianceMatrix(g);
}

}  // namespace

ClassicalityReport is_classical(const CovarianceMatrix& gamma) {
    if (!is_physical(gamma).physical) fail(ErrorKind::InvalidArgument, "covariance matrix is unphysical");
    const Matrix& g = gamma.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(g - Matrix::Identity(g.rows(), g.cols()), Eigen::EigenvaluesOnly);
    ClassicalityReport r;
    r.margin = es.eigenvalues().minCoeff();
    r.classical = r.margin >= -kTol.classical;
    return r;
}

bool classicality_invariance_check(const CovarianceMatrix& gamma, const Matrix& o) {
    if (o.rows() != gamma.matrix().rows() || !is_orthogonal(o) || !is_symplectic(o))
        fail(ErrorKind::InvalidArgument, "transform is not orthogonal symplectic of matching size");
    const bool before = is_classical(gamma).classical;
    const bool after = is_classical(CovarianceMatrix(o * gamma.matrix() * o.transpose())).classical;
    if (before != after) fail(ErrorKind::InvalidArgument, "classicality verdict changed under transform");
    return before;
}

Matrix partial_transpose(const Matrix& gamma, int mode) {
    const int n = static_cast<int>(gamma.rows() / 2);
    Matrix f = Matrix::Identity(2 * n, 2 * n);
    f(n + mode, n + mode) = -1.0;
    return f * gamma * f;
}

double two_mode_separable_boundary_residual(const CovarianceMatrix& gamma_sigma) {
    if (gamma_sigma.modes() != 2) fail(ErrorKind::Unsupported, "separable boundary residual needs n = 2");
    const Matrix pt = partial_transpose(gamma_sigma.matrix(), 1);
    const CMatrix h = pt.cast<cdouble>() + cdouble(0, 1) * symplectic_form(2).cast<cdouble>();
    return h.determinant().real();
}

bool is_fully_separable_symmetric(const SymmetricSpec& s) {
    return (s.a - s.c1) * (s.b - (s.n - 1) * s.c2) >= 1.0 - kTol.separable_symmetric;
}

CovarianceMatrix classical_boundary_expand(const FreeStateParams& p) {
    if (p.kind != FreeKind::ClassicalBoundary) fail(ErrorKind::InvalidArgument, "expected classical-boundary parameters");
    if (p.n < 1 || p.n > 2 || p.a.size() != static_cast<size_t>(p.n) || p.b.size() != static_cast<size_t>(p.n))
        fail(ErrorKind::InvalidArgument, "classical boundary needs n in {1,2} with n diagonal pairs");
    if (!(std::abs(p.kappa) <= 1.0)) fail(ErrorKind::InvalidArgument, "kappa must lie in [-1,1]");
    for (int j = 0; j < p.n; ++j)
        if (!(p.a[j] >= 1.0 && p.b[j] >= 1.0))
            fail(ErrorKind::InvalidArgument, "classical boundary diagonals must be >= 1");
    auto corr = [&](int j) { return std::sqrt((p.a[j] - 1.0) * (p.b[j] - 1.0)); };
    if (p.n == 1) {
        Matrix g(2, 2);
        const double c = p.kappa * corr(0);
        g << p.a[0], c, c, p.b[0];
        return CovarianceMatrix(g);
    }
    return blocks(p.a[0], p.b[0], corr(0), p.a[1], p.b[1], p.kappa * corr(1));
}

std::vector<double> separable_boundary_roots(double a1, double b1, double c1, double a2, double b2) {
    // det(gamma^PT + i Delta) = D1 (a2 b2 - c2^2) - a1 a2 - b1 b2 - 2 c1 c2 + 1, D1 = a1 b1 - c1^2.
    const double d1 = a1 * b1 - c1 * c1;
    const double k = d1 * a2 * b2 - a1 * a2 - b1 * b2 + 1.0;
    std::vector<double> roots;
    if (std::abs(d1) < 1e-300) {
        if (c1 != 0.0) roots.push_back(k / (2.0 * c1));
        return roots;
    }
    const double disc = c1 * c1 + d1 * k;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    // Stable pairing of the two roots of d1 x^2 + 2 c1 x - k = 0.
    const double q = -(c1 + std::copysign(sq, c1 == 0.0 ? 1.0 : c1));
    const double r1 = q / d1;
    const double r2 = q != 0.0 ? -k / q : -r1;
    roots.push_back(std::max(r1, r2));
    roots.push_back(std::min(r1, r2));
    return roots;
}

CovarianceMatrix separable_boundary_expand(const FreeStateParams& p) {
    if (p.kind != FreeKind::SeparableBoundary || p.n != 2 || p.a.size() != 2 || p.b.size() != 2)
        fail(ErrorKind::InvalidArgument, "separable boundary needs n = 2 with two diagonal pairs");
    const auto roots = separable_boundary_roots(p.a[0], p.b[0], p.c_sigma1, p.a[1], p.b[1]);
    if (roots.empty()) fail(ErrorKind::InvalidArgument, "separable boundary has no real correlation for these diagonals");
    const double c2 = (p.root >= 0 || roots.size() == 1) ? roots.front() : roots.back();
    return blocks(p.a[0], p.b[0], p.c_sigma1, p.a[1], p.b[1], c2);
}

}  // namespace gres
