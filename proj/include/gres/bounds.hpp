#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gres/criteria.hpp"
#include "gres/optimizer.hpp"
#include "gres/symplectic.hpp"

namespace gres {

enum class Resource { Nonclassicality, Entanglement };
enum class Method { Auto, Analytic, Numeric };

const char* resource_name(Resource r);

struct LambdaContext {
    std::vector<double> u;         // (nu_sigma - 1)/(nu_sigma + 1)
    Matrix gamma_prime;            // S_F^{-1} gamma S_F^{-T}
    Matrix gamma_dprime;           // empty when the transfer route was used
    std::vector<double> nu_dprime;
    bool transfer_route = false;
};

struct LambdaResult {
    bool exists = false;
    double value = std::numeric_limits<double>::infinity();
    std::string reason;
    LambdaContext context;
};

// Largest eigenvalue of sigma^{-1/2} rho sigma^{-1/2} for Gaussian rho, sigma.
LambdaResult lambda_upper(const Matrix& gamma, const Matrix& gamma_sigma);
LambdaResult lambda_upper(const CovarianceMatrix& gamma, const FreeStateParams& sigma);

struct BoundResult {
    double value = 1.0;
    std::string method;
    bool converged = true;
    Point argument;  // chart coordinates of the best point
};

struct RobustnessBounds {
    Resource resource = Resource::Nonclassicality;
    double lower = 1.0;
    double upper = 1.0;
    std::string lower_method;
    std::string upper_method;
    double gap = 0.0;
    bool converged = true;
    bool conjecture_conditional = false;
    double numeric_lower = std::numeric_limits<double>::quiet_NaN();
    double numeric_upper = std::numeric_limits<double>::quiet_NaN();
};

// Upper bounds: n = 1 general CM, n = 2 standard form, or symmetric spec.
BoundResult upper_bound(const CovarianceMatrix& gamma, Resource r);
BoundResult upper_bound(const TwoModeStandardForm& s, Resource r);
// Stops searching further charts once the value reaches known_lower.
BoundResult upper_bound(const TwoModeStandardForm& s, Resource r, double known_lower);
BoundResult upper_bound(const SymmetricSpec& s, Resource r);

// Witness lower bounds over the same families, floored at 1.
BoundResult lower_bound_witness(const CovarianceMatrix& gamma, Resource r);
BoundResult lower_bound_witness(const TwoModeStandardForm& s, Resource r);
BoundResult lower_bound_witness(const SymmetricSpec& s, Resource r);

// Max of the epsilon = 0 chart, the q = x_-/p chart and (nonclassicality only)
// the infinitely squeezed single-block chart.
BoundResult lower_bound_charted(const TwoModeStandardForm& s, Resource r);

// Individual witness charts for a standard-form state.
double chart_pq_zero_epsilon(const TwoModeStandardForm& s, Resource r, Point* arg = nullptr);
double chart_q_from_x_minus(const TwoModeStandardForm& s, Resource r, Point* arg = nullptr);
double chart_free_pq(const TwoModeStandardForm& s, Resource r, Point* arg = nullptr);
double chart_single_block(const TwoModeStandardForm& s);

// Witness ratio of an asymptotic two-mode witness (p, q, eps1, eps2).
double asymptotic_witness_ratio(const TwoModeStandardForm& s, Resource r, double p, double q, double e1, double e2);

// Closed forms.
double exact_single_mode(double a, double b, double c);
struct BranchValue {
    double value = 1.0;
    int branch = 0;
};
BranchValue exact_two_mode_squeezed_thermal(double a, double b, double c);
double tmst_branch_value(int branch, double a, double b, double c);
double exact_symmetric_nonclassicality(const SymmetricSpec& s);
double symmetric_entanglement_lower(const SymmetricSpec& s);

SymmetricSpec ghz_spec(int n, double r, double eta);
// Fully separable state attaining e^{2r-2eta} for the thermal GHZ state (eta > 0).
CovarianceMatrix ghz_free_state(int n, double r, double eta);
RobustnessBounds ghz_entanglement_bounds(int n, double r, double eta);

struct SingleModeInput {
    double a = 1, b = 1, c = 0;
};
struct GhzInput {
    int n = 3;
    double r = 0, eta = 0;
};
using FamilyInput = std::variant<SingleModeInput, TwoModeStandardForm, SymmetricSpec, GhzInput, CovarianceMatrix>;

std::optional<TwoModeStandardForm> detect_standard_form(const Matrix& gamma, double tol = 1e-12);
std::optional<SymmetricSpec> detect_symmetric(const Matrix& gamma, double tol = 1e-12);

RobustnessBounds robustness(const FamilyInput& input, Resource r, Method m = Method::Auto);

}  // namespace gres
