#include <cmath>

#include "gres/bounds.hpp"

namespace gres {

const char* resource_name(Resource r) {
    return r == Resource::Nonclassicality ? "nonclassicality" : "entanglement";
}

double exact_single_mode(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && a * b - c * c >= 1.0 - kTol.physical))
        fail(ErrorKind::InvalidArgument, "single-mode parameters are unphysical (need a, b > 0 and ab - c^2 >= 1)");
    const double lmin = 0.5 * (a + b - std::sqrt((a - b) * (a - b) + 4.0 * c * c));
    return std::max(1.0 / std::sqrt(lmin), 1.0);
}

double tmst_branch_value(int branch, double a, double b, double c) {
    switch (branch) {
        case 1: return 2.0 / (a + b - 2.0 * c);
        case 2: return 1.0;
        case 3: return 2.0 * (a - 1.0) / ((a - 1.0) * (b + 1.0) - c * c);
        case 4: return 2.0 * (b - 1.0) / ((a + 1.0) * (b - 1.0) - c * c);
        default: fail(ErrorKind::InvalidArgument, "branch id must be 1..4");
    }
}

BranchValue exact_two_mode_squeezed_thermal(double a, double b, double c) {
    const double delta = (a - 1.0) * (b - 1.0) - c * c;
    int branch;
    if (a - c < 1.0 && b - c < 1.0)
        branch = 1;
    else if (delta >= 0.0)
        branch = 2;
    else if (a - c >= 1.0)
        branch = 3;
    else
        branch = 4;
    return {std::max(tmst_branch_value(branch, a, b, c), 1.0), branch};
}

double exact_symmetric_nonclassicality(const SymmetricSpec& s) {
    if (s.n < 2) fail(ErrorKind::InvalidArgument, "symmetric family needs n >= 2");
    if (!(s.e() > 0.0 && s.f() > 0.0 && s.g() > 0.0 && s.h() > 0.0))
        fail(ErrorKind::InvalidArgument, "symmetric parameters are unphysical");
    const double first = std::max({1.0 / std::sqrt(s.e()), 1.0 / std::sqrt(s.g()), 1.0});
    const double rest = std::max({1.0 / std::sqrt(s.f()), 1.0 / std::sqrt(s.h()), 1.0});
    return first * std::pow(rest, s.n - 1);
}

double symmetric_entanglement_lower(const SymmetricSpec& s) {
    const double fg = s.f() * s.g();
    if (!(fg > 0.0)) fail(ErrorKind::InvalidArgument, "symmetric parameters are unphysical");
    return std::max(1.0 / std::sqrt(fg), 1.0);
}

SymmetricSpec ghz_spec(int n, double r, double eta) {
    if (n < 2 || !(r >= 0.0) || !(eta >= 0.0)) fail(ErrorKind::InvalidArgument, "GHZ needs n >= 2, r >= 0, eta >= 0");
    const double scale = std::exp(2.0 * eta) / n;
    SymmetricSpec s;
    s.n = n;
    s.a = scale * (std::exp(2.0 * r) + (n - 1) * std::exp(-2.0 * r));
    s.c1 = s.c2 = scale * (std::exp(2.0 * r) - std::exp(-2.0 * r));
    s.b = s.a + (n - 2) * s.c1;
    return s;
}

CovarianceMatrix ghz_free_state(int n, double r, double eta) {
    if (!(eta > 0.0)) fail(ErrorKind::InvalidArgument, "the constructed free state needs eta > 0");
    const double s1 = 0.25 * std::log(std::exp(4.0 * r) + std::exp(4.0 * r - 4.0 * eta) - 1.0);
    Vector diag(2 * n);
    diag(0) = std::exp(4.0 * s1 - 2.0 * r + 2.0 * eta);
    diag(n) = std::exp(2.0 * r - 2.0 * eta);
    for (int k = 1; k < n; ++k) {
        diag(k) = std::exp(-2.0 * r + 2.0 * eta);
        diag(n + k) = std::exp(2.0 * r + 2.0 * eta);
    }
    const Matrix s = symmetric_diagonalizer(n);
    return CovarianceMatrix(s.transpose() * diag.asDiagonal() * s);
}

RobustnessBounds ghz_entanglement_bounds(int n, double r, double eta) {
    const SymmetricSpec s = ghz_spec(n, r, eta);
    RobustnessBounds b;
    b.resource = Resource::Entanglement;
    b.lower = symmetric_entanglement_lower(s);
    b.upper = std::max(std::exp(2.0 * r - 2.0 * eta), 1.0);
    b.lower_method = "analytic:symmetric-witness";
    b.upper_method = "analytic:ghz-free-state";
    b.gap = b.upper - b.lower;
    b.conjecture_conditional = n >= 4;
    return b;
}

}  // namespace gres
