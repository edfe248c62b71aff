#include "gres/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gres {

namespace {

void require_even_square(const Matrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols() || m.rows() % 2 != 0)
        fail(ErrorKind::InvalidArgument, "covariance matrix must be square with even dimension, got " +
                                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!m.allFinite()) fail(ErrorKind::InvalidArgument, "covariance matrix has non-finite entries");
}

void require_symmetric(const Matrix& m) {
    require_even_square(m);
    if (!is_symmetric(m)) fail(ErrorKind::InvalidArgument, "covariance matrix is not symmetric");
}

Eigen::SelfAdjointEigenSolver<Matrix> positive_definite_eigen(const Matrix& m) {
    require_symmetric(m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0)
        fail(ErrorKind::InvalidArgument, "covariance matrix is not positive definite");
    return es;
}

}  // namespace

bool is_symmetric(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol * std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))}))
                return false;
    return true;
}

bool is_symplectic(const Matrix& s, double tol) {
    if (s.rows() != s.cols() || s.rows() % 2 != 0) return false;
    const Matrix d = symplectic_form(static_cast<int>(s.rows() / 2));
    return (s * d * s.transpose() - d).cwiseAbs().maxCoeff() <= tol;
}

bool is_orthogonal(const Matrix& s, double tol) {
    if (s.rows() != s.cols()) return false;
    return (s * s.transpose() - Matrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff() <= tol;
}

CovarianceMatrix::CovarianceMatrix(const Matrix& m) {
    require_symmetric(m);
    m_ = 0.5 * (m + m.transpose());
}

Matrix symplectic_form(int n) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "mode count must be at least 1");
    Matrix d = Matrix::Zero(2 * n, 2 * n);
    d.topRightCorner(n, n) = -Matrix::Identity(n, n);
    d.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
    return d;
}

Matrix hn_block(int n, double diag, double off) {
    Matrix h = Matrix::Constant(n, n, off);
    h.diagonal().setConstant(diag);
    return h;
}

CovarianceMatrix TwoModeStandardForm::expand() const {
    Matrix g = Matrix::Zero(4, 4);
    g << a, c1, 0, 0,
         c1, b, 0, 0,
         0, 0, a, -c2,
         0, 0, -c2, b;
    return CovarianceMatrix(g);
}

CovarianceMatrix SymmetricSpec::expand() const {
    if (n < 2) fail(ErrorKind::InvalidArgument, "symmetric family needs n >= 2");
    Matrix g = Matrix::Zero(2 * n, 2 * n);
    g.topLeftCorner(n, n) = hn_block(n, a, c1);
    g.bottomRightCorner(n, n) = hn_block(n, b, -c2);
    return CovarianceMatrix(g);
}

PhysicalityReport is_physical(const Matrix& gamma) {
    require_symmetric(gamma);
    const int n = static_cast<int>(gamma.rows() / 2);
    CMatrix h = gamma.cast<cdouble>() + cdouble(0, 1) * symplectic_form(n).cast<cdouble>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    PhysicalityReport r;
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    r.physical = r.min_eigenvalue >= -kTol.physical;
    return r;
}

PhysicalityReport is_physical(const CovarianceMatrix& gamma) { return is_physical(gamma.matrix()); }

std::vector<double> symplectic_eigenvalues(const Matrix& gamma) {
    auto es = positive_definite_eigen(gamma);
    const int n = static_cast<int>(gamma.rows() / 2);
    const Matrix root = es.operatorSqrt();
    CMatrix h = cdouble(0, 1) * (root * symplectic_form(n) * root).cast<cdouble>();
    Eigen::SelfAdjointEigenSolver<CMatrix> hs(h, Eigen::EigenvaluesOnly);
    std::vector<double> nu(n);
    for (int k = 0; k < n; ++k) nu[k] = hs.eigenvalues()(2 * n - 1 - k);
    return nu;
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma) {
    return symplectic_eigenvalues(gamma.matrix());
}

// The positive eigenvectors q = x + i y of i*gamma^{-1/2} Delta gamma^{-1/2}
// supply an orthogonal K = sqrt(2)[x.. | y..] with K^T A K = Delta D^{-1}.
// Degenerate clusters are resolved through their projector with a pivoted
// Gram-Schmidt on the unit vectors, so the basis does not depend on the
// eigensolver's arbitrary choice inside the eigenspace.
SymplecticDecomposition williamson(const Matrix& gamma) {
    auto es = positive_definite_eigen(gamma);
    const int n = static_cast<int>(gamma.rows() / 2);
    const int dim = 2 * n;
    const Matrix root = es.operatorSqrt();
    const Matrix inv_root = es.operatorInverseSqrt();
    CMatrix h = cdouble(0, 1) * (inv_root * symplectic_form(n) * inv_root).cast<cdouble>();
    Eigen::SelfAdjointEigenSolver<CMatrix> hs(h);
    const Vector& w = hs.eigenvalues();  // ascending: -1/nu_min .. 1/nu_min; positives ascend in 1/nu

    std::vector<CVector> basis;
    std::vector<double> inv_nu;
    int k = n;
    while (k < dim) {
        int end = k + 1;
        while (end < dim && std::abs(w(end) - w(k)) <= kTol.cluster * std::abs(w(k))) ++end;
        const int m = end - k;
        const CMatrix v = hs.eigenvectors().middleCols(k, m);
        CMatrix proj = v * v.adjoint();
        std::vector<CVector> chosen;
        for (int t = 0; t < m; ++t) {
            std::vector<CVector> resid(dim);
            std::vector<double> norms(dim);
            double best = 0.0;
            for (int i = 0; i < dim; ++i) {
                CVector r = proj.col(i);
                for (const auto& c : chosen) r -= c * c.dot(r);
                norms[i] = r.squaredNorm();
                resid[i] = std::move(r);
                best = std::max(best, norms[i]);
            }
            int pick = 0;
            while (norms[pick] < best * (1.0 - 1e-8)) ++pick;
            CVector q = resid[pick] / std::sqrt(norms[pick]);
            q *= std::conj(q(pick)) / std::abs(q(pick));
            chosen.push_back(q);
        }
        for (auto& q : chosen) basis.push_back(q);
        const double avg = w.segment(k, m).mean();
        for (int t = 0; t < m; ++t) inv_nu.push_back(avg);
        k = end;
    }

    Matrix kmat(dim, dim);
    const double s2 = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        kmat.col(i) = s2 * basis[i].real();
        kmat.col(n + i) = s2 * basis[i].imag();
    }
    SymplecticDecomposition out;
    out.nu.resize(n);
    Vector scale(dim);
    for (int i = 0; i < n; ++i) {
        out.nu[i] = 1.0 / inv_nu[i];
        scale(i) = scale(n + i) = std::sqrt(inv_nu[i]);
    }
    out.S = root * kmat * scale.asDiagonal();
    return out;
}

SymplecticDecomposition williamson(const CovarianceMatrix& gamma) { return williamson(gamma.matrix()); }

Matrix symmetric_diagonalizer(int n) {
    if (n < 2) fail(ErrorKind::InvalidArgument, "symmetric diagonalizer needs n >= 2");
    // Row 0 is the uniform vector; row k (k >= 1) is (1,..,1,-k,0,..,0)/sqrt(k(k+1))
    // with k leading ones.
    Matrix x = Matrix::Zero(n, n);
    x.row(0).setConstant(1.0 / std::sqrt(double(n)));
    for (int k = 1; k < n; ++k) {
        const double norm = std::sqrt(double(k) * (k + 1));
        for (int j = 0; j < k; ++j) x(k, j) = 1.0 / norm;
        x(k, k) = -double(k) / norm;
    }
    Matrix s = Matrix::Zero(2 * n, 2 * n);
    s.topLeftCorner(n, n) = x;
    s.bottomRightCorner(n, n) = x;
    return s;
}

CMatrix l_matrix(int n) {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix l = CMatrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        l(i, i) = cdouble(0, -r);
        l(i, n + i) = -r;
        l(n + i, i) = cdouble(0, r);
        l(n + i, n + i) = -r;
    }
    return l;
}

Matrix sigma1(int n) {
    Matrix s = Matrix::Zero(2 * n, 2 * n);
    s.topRightCorner(n, n) = Matrix::Identity(n, n);
    s.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
    return s;
}

Vector sigma3_diagonal(int n) {
    Vector d(2 * n);
    d.head(n).setOnes();
    d.tail(n).setConstant(-1.0);
    return d;
}

ComplexBeta complex_beta(const Matrix& gamma) {
    require_symmetric(gamma);
    const int n = static_cast<int>(gamma.rows() / 2);
    const Matrix shifted = gamma + Matrix::Identity(2 * n, 2 * n);
    Eigen::PartialPivLU<Matrix> plu(shifted);
    if (!(plu.rcond() > kTol.singular_rcond))
        fail(ErrorKind::SingularState, "gamma + I is singular");
    const CMatrix l = l_matrix(n);
    const CMatrix inner = 0.5 * (l * gamma.cast<cdouble>() * l.transpose()) + 0.5 * sigma1(n).cast<cdouble>();
    Eigen::PartialPivLU<CMatrix> lu(inner);
    const Vector s3 = sigma3_diagonal(n);
    ComplexBeta out;
    out.beta = s3.asDiagonal() * lu.inverse() * s3.asDiagonal();
    out.normalization = std::pow(2.0, n) / std::sqrt(std::abs(plu.determinant()));
    return out;
}

ComplexBeta complex_beta(const CovarianceMatrix& gamma) { return complex_beta(gamma.matrix()); }

bool gamma_from_beta(const CMatrix& beta, Matrix& gamma) {
    const int n = static_cast<int>(beta.rows() / 2);
    const Vector s3 = sigma3_diagonal(n);
    const CMatrix conj = s3.asDiagonal() * beta * s3.asDiagonal();
    Eigen::PartialPivLU<CMatrix> lu(conj);
    if (!(lu.rcond() > kTol.singular_rcond)) return false;
    const CMatrix gt = 2.0 * lu.inverse() - sigma1(n).cast<cdouble>();
    const CMatrix l = l_matrix(n);
    const CMatrix g = l.adjoint() * gt * l.conjugate();
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if (!g.allFinite() || g.imag().cwiseAbs().maxCoeff() > 1e-8 * scale) return false;
    gamma = 0.5 * (g.real() + g.real().transpose());
    return true;
}

}  // namespace gres
