#pragma once

#include <cstdint>
#include <vector>

#include "gres/criteria.hpp"
#include "gres/symplectic.hpp"

namespace gres {

// Dense operator on the truncated Fock space, multi-index (k1..kn) flattened
// row-major (mode 1 slowest).
struct FockTensor {
    int n = 0;
    int cutoff = 0;
    CMatrix elements;
    double trace_deficit = 0.0;  // 1 - Re tr, meaningful for normalized states
};

struct ProductPureState {
    std::vector<CVector> modes;
};

struct ProductMeanResult {
    double value = 0.0;  // max <psi|omega|psi>
    ProductPureState state;
    double vacuum_overlap = 0.0;  // prod_j |c_j(0)|^2
    bool converged = true;
};

struct BruteForceLambda {
    double value = 0.0;
    int cutoff = 0;
    int previous_cutoff = 0;
    double previous_value = 0.0;
    bool stable = false;
    bool divergent = false;
    std::vector<int> cutoffs;
    std::vector<double> ladder;
};

// Single-mode state with diagonal CM from the closed-form element sum.
FockTensor fock_elements_single_mode(const Matrix& gamma, int cutoff);

// Any Gaussian state via Taylor coefficients of exp(z^T M z / 2), M = sigma1 + beta.
FockTensor fock_elements(const CovarianceMatrix& gamma, int cutoff);

// sqrt(l! m!) [t^l t'^m] exp(z^T M z / 2) times prefactor, for a 2n x 2n symmetric M.
CMatrix gaussian_kernel_elements(const CMatrix& m, int cutoff, cdouble prefactor);

void check_fock_size(int n, int cutoff);

BruteForceLambda brute_force_lambda(const CovarianceMatrix& gamma, const Matrix& gamma_sigma, int cutoff);
BruteForceLambda brute_force_lambda(const CovarianceMatrix& gamma, const FreeStateParams& sigma, int cutoff);

// Eigenvalue parameters of a symmetric witness H_n(a_w, c_w1) (+) H_n(b_w, c_w2).
struct WitnessEigen {
    int n = 3;
    double a = 1, b = 1, c = 1, d = 1;
};
WitnessEigen witness_eigen(int n, double a_w, double b_w, double c_w1, double c_w2);
Matrix witness_cm(const WitnessEigen& w, double y);  // presqueezed: gamma_x / y (+) y gamma_p

double presqueeze_nullify(double a, double b, double c, double d, int n);
CMatrix presqueezed_beta(const WitnessEigen& w, double y);

FockTensor witness_fock(const CMatrix& beta, int cutoff);

ProductMeanResult max_product_mean(const FockTensor& omega, int starts = 8, std::uint64_t seed = 12345);

// presqueeze_nullify -> witness_fock -> max_product_mean; m0 excludes the sqrt|det beta| prefactor.
struct WitnessVerification {
    double y = 1.0;
    double prefactor = 1.0;
    double m0 = 0.0;
    ProductMeanResult mean;
};
WitnessVerification verify_witness(const WitnessEigen& w, int cutoff, int starts = 8, std::uint64_t seed = 12345);

// Momentum flip on mode 2 followed by the uncertainty test: true means separable.
bool ppt_partial_transpose_check(const CovarianceMatrix& gamma);

}  // namespace gres
