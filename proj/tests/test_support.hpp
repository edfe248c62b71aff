#pragma once

#include <cmath>
#include <random>

#include "gres/symplectic.hpp"

namespace gres::testing {

// Passive (orthogonal symplectic) transform [[X, -Y], [Y, X]] from a Haar-ish unitary X + iY.
inline Matrix random_orthogonal_symplectic(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CMatrix z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = cdouble(nd(rng), nd(rng));
    Eigen::HouseholderQR<CMatrix> qr(z);
    const CMatrix u = qr.householderQ() * CMatrix::Identity(n, n);
    Matrix o(2 * n, 2 * n);
    o.topLeftCorner(n, n) = u.real();
    o.topRightCorner(n, n) = -u.imag();
    o.bottomLeftCorner(n, n) = u.imag();
    o.bottomRightCorner(n, n) = u.real();
    return o;
}

// O1 * diag(e^{r}, e^{-r}) * O2 with squeezing |r| <= max_r.
inline Matrix random_symplectic(int n, std::mt19937_64& rng, double max_r = 1.0) {
    std::uniform_real_distribution<double> ur(-max_r, max_r);
    Matrix sq = Matrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        const double r = ur(rng);
        sq(i, i) = std::exp(r);
        sq(n + i, n + i) = std::exp(-r);
    }
    return random_orthogonal_symplectic(n, rng) * sq * random_orthogonal_symplectic(n, rng);
}

inline Matrix random_physical_cm(int n, std::mt19937_64& rng, double max_r = 1.0, double max_nu = 4.0) {
    std::uniform_real_distribution<double> un(1.0, max_nu);
    Vector d(2 * n);
    for (int i = 0; i < n; ++i) d(i) = d(n + i) = un(rng);
    const Matrix s = random_symplectic(n, rng, max_r);
    Matrix g = s * d.asDiagonal() * s.transpose();
    return 0.5 * (g + g.transpose());
}

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

// Two-mode squeezed thermal state in standard form.
inline TwoModeStandardForm squeezed_thermal(double nu1, double nu2, double r) {
    const double np = 0.5 * (nu1 + nu2), nm = 0.5 * (nu1 - nu2);
    const double c = np * std::sinh(2 * r);
    return {np * std::cosh(2 * r) + nm, np * std::cosh(2 * r) - nm, c, c};
}

}  // namespace gres::testing
