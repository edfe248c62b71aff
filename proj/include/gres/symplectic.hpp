#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gres/config.hpp"
#include "gres/error.hpp"

namespace gres {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using cdouble = std::complex<double>;

// Covariance matrix in (x1..xn, p1..pn) ordering; vacuum is the identity.
// Construction checks symmetry and stores the symmetric part.
class CovarianceMatrix {
public:
    CovarianceMatrix() = default;
    explicit CovarianceMatrix(const Matrix& m);

    int modes() const { return static_cast<int>(m_.rows() / 2); }
    const Matrix& matrix() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

private:
    Matrix m_;
};

struct SymplecticDecomposition {
    Matrix S;
    std::vector<double> nu;  // descending
};

struct PhysicalityReport {
    bool physical = false;
    double min_eigenvalue = 0.0;
};

// gamma = gamma_x (+) gamma_p with gamma_x = [[a,c1],[c1,b]], gamma_p = [[a,-c2],[-c2,b]].
struct TwoModeStandardForm {
    double a = 1, b = 1, c1 = 0, c2 = 0;
    CovarianceMatrix expand() const;
};

// gamma = H_n(a,c1) (+) H_n(b,-c2).
struct SymmetricSpec {
    int n = 2;
    double a = 1, b = 1, c1 = 0, c2 = 0;
    CovarianceMatrix expand() const;

    // Eigenvalues of the two blocks after symmetric_diagonalizer:
    // (e, g) for the collective mode, (f, h) for each of the n-1 others.
    double e() const { return a + (n - 1) * c1; }
    double f() const { return a - c1; }
    double g() const { return b - (n - 1) * c2; }
    double h() const { return b + c2; }
};

Matrix symplectic_form(int n);

Matrix hn_block(int n, double diag, double off);

PhysicalityReport is_physical(const CovarianceMatrix& gamma);
PhysicalityReport is_physical(const Matrix& gamma);

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& gamma);
std::vector<double> symplectic_eigenvalues(const Matrix& gamma);

SymplecticDecomposition williamson(const CovarianceMatrix& gamma);
SymplecticDecomposition williamson(const Matrix& gamma);

Matrix symmetric_diagonalizer(int n);

struct ComplexBeta {
    CMatrix beta;
    double normalization = 0.0;  // |det beta|^{1/2} = 2^n det(gamma+I)^{-1/2}
};

ComplexBeta complex_beta(const CovarianceMatrix& gamma);
ComplexBeta complex_beta(const Matrix& gamma);

// Helpers shared by the complex-covariance transforms.
CMatrix l_matrix(int n);
Matrix sigma1(int n);
Vector sigma3_diagonal(int n);

// Inverse of complex_beta: the real CM whose beta is the given matrix.
// Returns false when the inversion is singular or the result is not real.
bool gamma_from_beta(const CMatrix& beta, Matrix& gamma);

bool is_symmetric(const Matrix& m, double tol = kTol.symmetry);
bool is_symplectic(const Matrix& s, double tol = kTol.orthogonal);
bool is_orthogonal(const Matrix& s, double tol = kTol.orthogonal);

}  // namespace gres
