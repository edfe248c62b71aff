#include <algorithm>
#include <cmath>

#include "gres/bounds.hpp"

namespace gres {

namespace {

LambdaResult nonexistent(std::string why) {
    LambdaResult r;
    r.reason = std::move(why);
    return r;
}

// Route through the CM of rho'': rebuild gamma'' from beta'' and use its
// symplectic spectrum.
bool via_dprime(const CMatrix& beta_dd, const std::vector<double>& u, const Matrix& gp, LambdaResult& out) {
    const int n = static_cast<int>(u.size());
    Matrix gdd;
    if (!gamma_from_beta(beta_dd, gdd)) {
        out.reason = "rho'' has no real covariance matrix";
        return false;
    }
    const double scale = std::max(1.0, gdd.cwiseAbs().maxCoeff());
    const CMatrix h = gdd.cast<cdouble>() + cdouble(0, 1) * symplectic_form(n).cast<cdouble>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kTol.physical * scale) {
        out.reason = "rho'' violates the uncertainty relation";
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> pd(gdd, Eigen::EigenvaluesOnly);
    if (pd.eigenvalues().minCoeff() <= 0.0) {
        out.reason = "rho'' covariance matrix is not positive definite";
        return false;
    }
    const std::vector<double> nu = symplectic_eigenvalues(gdd);
    double value = 1.0;
    for (int i = 0; i < n; ++i) {
        if (nu[i] < 1.0 - kTol.nu_floor) {
            out.reason = "rho'' has a symplectic eigenvalue below 1";
            return false;
        }
        value *= 2.0 / ((1.0 - u[i]) * (nu[i] + 1.0));
    }
    const Matrix id = Matrix::Identity(2 * n, 2 * n);
    value *= std::sqrt((gdd + id).determinant() / (gp + id).determinant());
    out.value = value;
    out.context.gamma_dprime = gdd;
    out.context.nu_dprime = nu;
    return true;
}

// Route through the transfer matrix of the Gaussian kernel of rho''.  Works
// when rho'' is close to singular (sigma agreeing with rho on some modes),
// where the covariance route loses all precision.
bool via_transfer(const CMatrix& mdd, const std::vector<double>& u, double norm_prime, LambdaResult& out) {
    const int n = static_cast<int>(u.size());
    const CMatrix p = mdd.topLeftCorner(n, n);
    const CMatrix r = mdd.topRightCorner(n, n);
    const CMatrix q = mdd.bottomRightCorner(n, n);
    Eigen::PartialPivLU<CMatrix> lu(r);
    if (!(lu.rcond() > kTol.singular_rcond)) {
        out.reason = "kernel of rho'' is degenerate";
        return false;
    }
    const CMatrix ri = lu.inverse();
    CMatrix t(2 * n, 2 * n);
    t.topLeftCorner(n, n) = ri;
    t.topRightCorner(n, n) = -ri * p;
    t.bottomLeftCorner(n, n) = q * ri;
    t.bottomRightCorner(n, n) = r.transpose() - q * ri * p;
    Eigen::ComplexEigenSolver<CMatrix> es(t.transpose());
    std::vector<std::pair<double, cdouble>> cand;  // (signature, eigenvalue)
    for (int k = 0; k < 2 * n; ++k) {
        const CVector y = es.eigenvectors().col(k);
        cand.emplace_back(y.head(n).squaredNorm() - y.tail(n).squaredNorm(), es.eigenvalues()(k));
    }
    std::vector<cdouble> w;
    for (const auto& c : cand)
        if (c.first < 0.0) w.push_back(c.second);
    if (static_cast<int>(w.size()) != n) {
        // Signatures vanish when eigenvalues pair at 1; take the n smallest moduli.
        std::sort(cand.begin(), cand.end(),
                  [](const auto& x, const auto& y) { return std::abs(x.second) < std::abs(y.second); });
        w.clear();
        for (int k = 0; k < n; ++k) w.push_back(cand[k].second);
    }
    double prod = 1.0;
    for (const auto& v : w) {
        if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v)) || !(v.real() > 0.0) ||
            v.real() > 1.0 + 1e-9) {
            out.reason = "rho'' is unbounded";
            return false;
        }
        prod *= v.real();
    }
    double denom = 1.0;
    for (double ui : u) denom *= 1.0 - ui;
    out.value = norm_prime / denom * std::sqrt(prod / std::abs(lu.determinant()));
    out.context.transfer_route = true;
    return true;
}

}  // namespace

LambdaResult lambda_upper(const Matrix& gamma, const Matrix& gamma_sigma) {
    if (gamma.rows() != gamma_sigma.rows() || gamma.cols() != gamma_sigma.cols())
        fail(ErrorKind::InvalidArgument, "state and free state have different sizes");
    const int n = static_cast<int>(gamma.rows() / 2);

    // rho <= Lambda sigma bounds every quadrature marginal of rho by that of
    // sigma, which for Gaussians forces gamma_sigma >= gamma.
    {
        const double scale = std::max(1.0, std::max(gamma.cwiseAbs().maxCoeff(), gamma_sigma.cwiseAbs().maxCoeff()));
        const Matrix diff = gamma_sigma - gamma;
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.transpose()), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kTol.physical * scale)
            return nonexistent("free state has a quadrature narrower than the state's");
    }

    SymplecticDecomposition dec;
    try {
        dec = williamson(gamma_sigma);
    } catch (const Error&) {
        return nonexistent("free state is not positive definite");
    }
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) {
        u[i] = (dec.nu[i] - 1.0) / (dec.nu[i] + 1.0);
        if (!(u[i] > 1e-14)) return nonexistent("free state has a pure mode");
    }
    const Matrix d = symplectic_form(n);
    const Matrix s_inv = -d * dec.S.transpose() * d;
    Matrix gp = s_inv * gamma * s_inv.transpose();
    gp = 0.5 * (gp + gp.transpose());

    ComplexBeta cb;
    try {
        cb = complex_beta(gp);
    } catch (const Error&) {
        return nonexistent("rho' has a singular covariance shift");
    }
    Vector g(2 * n);
    for (int i = 0; i < n; ++i) g(i) = g(n + i) = 1.0 / std::sqrt(u[i]);
    const CMatrix s1 = sigma1(n).cast<cdouble>();
    const CMatrix mdd = g.asDiagonal() * (s1 + cb.beta) * g.asDiagonal();
    const CMatrix beta_dd = mdd - s1;

    LambdaResult out;
    out.context.u = u;
    out.context.gamma_prime = gp;

    const Vector s3 = sigma3_diagonal(n);
    Eigen::PartialPivLU<CMatrix> lu_b(CMatrix(s3.asDiagonal() * beta_dd * s3.asDiagonal()));
    Eigen::PartialPivLU<CMatrix> lu_r(CMatrix(mdd.topRightCorner(n, n)));
    // A vanishing beta'' (sigma equal to rho on every mode) leaves no covariance
    // matrix to rebuild; rcond is NaN when it is exactly zero.
    auto rc = [](double v) { return std::isnan(v) ? 0.0 : v; };
    const bool tiny = beta_dd.cwiseAbs().maxCoeff() < 1e-8 * mdd.cwiseAbs().maxCoeff();
    const double rc_b = tiny ? 0.0 : rc(lu_b.rcond()), rc_r = rc(lu_r.rcond());
    const bool prefer_transfer = !(rc_b > kTol.transfer_rcond) && rc_r > rc_b;
    const bool ok = prefer_transfer ? via_transfer(mdd, u, cb.normalization, out) : via_dprime(beta_dd, u, gp, out);
    if (!ok) {
        out.exists = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }
    out.exists = std::isfinite(out.value);
    out.reason.clear();
    return out;
}

LambdaResult lambda_upper(const CovarianceMatrix& gamma, const FreeStateParams& sigma) {
    const CovarianceMatrix gs =
        sigma.kind == FreeKind::ClassicalBoundary ? classical_boundary_expand(sigma) : separable_boundary_expand(sigma);
    return lambda_upper(gamma.matrix(), gs.matrix());
}

}  // namespace gres
