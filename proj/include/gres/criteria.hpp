#pragma once

#include <vector>

#include "gres/symplectic.hpp"

namespace gres {

struct ClassicalityReport {
    bool classical = false;
    double margin = 0.0;  // smallest eigenvalue of gamma - I
};

enum class FreeKind { ClassicalBoundary, SeparableBoundary };

// Boundary parameterization of free states.
//   n = 1, classical:  gamma = [[a0, c],[c, b0]], c = kappa*sqrt((a0-1)(b0-1)).
//   n = 2, classical:  x-block [[a0,c0],[c0,b0]], p-block [[a1,-c1],[-c1,b1]],
//                      c0 = sqrt((a0-1)(b0-1)), c1 = kappa*sqrt((a1-1)(b1-1)).
//   n = 2, separable:  same blocks, c0 = c_sigma1 and c1 solved so that the
//                      partially transposed CM sits on the uncertainty boundary;
//                      root = +1 or -1 selects the quadratic root.
// A negative kappa flips the sign of the p-correlation.
struct FreeStateParams {
    FreeKind kind = FreeKind::ClassicalBoundary;
    int n = 1;
    std::vector<double> a, b;
    double kappa = 1.0;
    double c_sigma1 = 0.0;
    int root = 1;
};

ClassicalityReport is_classical(const CovarianceMatrix& gamma);

bool classicality_invariance_check(const CovarianceMatrix& gamma, const Matrix& o);

// det(gamma^PT + i*Delta) with gamma^PT the momentum flip p2 -> -p2.
// Negative on entangled states, zero on the separability boundary.
double two_mode_separable_boundary_residual(const CovarianceMatrix& gamma_sigma);

bool is_fully_separable_symmetric(const SymmetricSpec& spec);

CovarianceMatrix classical_boundary_expand(const FreeStateParams& p);

// Throws InvalidArgument when the chosen root is complex.
CovarianceMatrix separable_boundary_expand(const FreeStateParams& p);

// Roots c_sigma2 of the separable boundary equation (0, 1 or 2 values).
std::vector<double> separable_boundary_roots(double a1, double b1, double c1, double a2, double b2);

Matrix partial_transpose(const Matrix& gamma, int mode);

}  // namespace gres
