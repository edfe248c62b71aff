// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gres/bounds.hpp"
#include "gres/criteria.hpp"
#include "gres/fock.hpp"
#include "test_support.hpp"

using namespace gres;
using gres::testing::rel_err;
using gres::testing::squeezed_thermal;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Matrix diag2(double x, double p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = x;
    m(1, 1) = p;
    return m;
}

// 1. Single-mode exactness on a 20x20 grid.
Outcome single_mode_exactness() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double r = 0.05 + (1.5 - 0.05) * i / 19.0;
        for (int j = 0; j < 20; ++j) {
            const double nu = std::exp(2.0 * r * j / 19.0);
            const CovarianceMatrix g(diag2(nu * std::exp(2 * r), nu * std::exp(-2 * r)));
            const double exact = std::max(std::exp(r) / std::sqrt(nu), 1.0);
            const double lo = lower_bound_witness(g, Resource::Nonclassicality).value;
            const double up = upper_bound(g, Resource::Nonclassicality).value;
            worst = std::max({worst, rel_err(lo, exact), rel_err(up, exact)});
        }
    }
    const double t = seconds_since(t0);
    return {worst < 1e-4 && t < 30.0, "max rel err " + fmt("%.3g", worst) + ", " + fmt("%.2f", t) + " s"};
}

// 2. Two-mode squeezed thermal: numeric bounds vs the piecewise formula, all branches.
Outcome squeezed_thermal_branches() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unu(1.0, 4.0), ur(0.0, 1.2);
    std::vector<TwoModeStandardForm> picked;
    int per_branch[5] = {0, 0, 0, 0, 0};
    while (picked.size() < 200) {
        const TwoModeStandardForm s = squeezed_thermal(unu(rng), unu(rng), ur(rng));
        const int br = exact_two_mode_squeezed_thermal(s.a, s.b, s.c1).branch;
        if (per_branch[br] >= 50) continue;
        ++per_branch[br];
        picked.push_back(s);
    }
    double worst_up = 0.0, worst_lo = 0.0;
    for (const auto& s : picked) {
        const double exact = exact_two_mode_squeezed_thermal(s.a, s.b, s.c1).value;
        worst_up = std::max(worst_up, rel_err(upper_bound(s, Resource::Nonclassicality).value, exact));
        worst_lo = std::max(worst_lo, rel_err(lower_bound_witness(s, Resource::Nonclassicality).value, exact));
    }
    // Continuity across the branch boundaries a - c = 1, b - c = 1 and delta = 0.
    double worst_jump = 0.0;
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int k = 0; k < 100; ++k) {
        const double c = u(rng), b = 1.0 + c - u(rng) / 4.0;  // b - c < 1
        const double a = 1.0 + c;                              // a - c = 1
        if ((a - 1) * (b - 1) - c * c < 0.0)
            worst_jump = std::max(worst_jump, std::abs(tmst_branch_value(1, a, b, c) - tmst_branch_value(3, a, b, c)));
        const double a2 = 1.0 + c - u(rng) / 4.0, b2 = 1.0 + c;  // b - c = 1
        if ((a2 - 1) * (b2 - 1) - c * c < 0.0)
            worst_jump =
                std::max(worst_jump, std::abs(tmst_branch_value(1, a2, b2, c) - tmst_branch_value(4, a2, b2, c)));
        // delta = 0 with a - c > 1: b = 1 + c^2 / (a - 1).
        const double a3 = 1.0 + c + u(rng), b3 = 1.0 + c * c / (a3 - 1.0);
        worst_jump = std::max(worst_jump, std::abs(tmst_branch_value(3, a3, b3, c) - tmst_branch_value(2, a3, b3, c)));
        const double b4 = 1.0 + c + u(rng), a4 = 1.0 + c * c / (b4 - 1.0);
        worst_jump = std::max(worst_jump, std::abs(tmst_branch_value(4, a4, b4, c) - tmst_branch_value(2, a4, b4, c)));
    }
    const bool covered = per_branch[1] == 50 && per_branch[2] == 50 && per_branch[3] == 50 && per_branch[4] == 50;
    return {covered && worst_up < 1e-3 && worst_lo < 1e-3 && worst_jump < 1e-9,
            "upper rel err " + fmt("%.3g", worst_up) + ", lower rel err " + fmt("%.3g", worst_lo) +
                ", boundary jump " + fmt("%.3g", worst_jump)};
}

// 3. R_C = R_E for two-mode squeezed thermal states.
Outcome nonclassicality_equals_entanglement() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unu(1.0, 3.0), ur(0.05, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const TwoModeStandardForm s = squeezed_thermal(unu(rng), unu(rng), ur(rng));
        const double lc = lower_bound_witness(s, Resource::Nonclassicality).value;
        const double uc = upper_bound(s, Resource::Nonclassicality).value;
        const double le = lower_bound_witness(s, Resource::Entanglement).value;
        const double ue = upper_bound(s, Resource::Entanglement).value;
        worst = std::max({worst, rel_err(le, lc), rel_err(ue, uc), rel_err(ue, lc), rel_err(le, uc)});
    }
    return {worst < 1e-3, "max rel |R_C - R_E| " + fmt("%.3g", worst)};
}

// 4. fig1a/fig1b presets through the dispatcher.
Outcome fig1_reproduction() {
    const auto t0 = Clock::now();
    double worst_gap = 0.0, worst_drop = 0.0;
    int points = 0;
    for (Resource r : {Resource::Nonclassicality, Resource::Entanglement}) {
        for (double c1 : {1.8, 1.6, 1.4, 1.2}) {
            double prev_lo = 0.0, prev_up = 0.0;
            for (int k = 1; k <= 24; ++k) {
                const TwoModeStandardForm s{2.4, 2.0, c1, c1 * k / 24.0};
                if (!is_physical(s.expand()).physical) continue;
                const RobustnessBounds b = robustness(s, r, Method::Auto);
                const double gap = std::log(b.upper) - std::log(b.lower);
                worst_gap = std::max(worst_gap, std::abs(gap));
                if (points > 0 && prev_lo > 0.0) {
                    worst_drop = std::max({worst_drop, std::log(prev_lo) - std::log(b.lower),
                                           std::log(prev_up) - std::log(b.upper)});
                }
                prev_lo = b.lower;
                prev_up = b.upper;
                ++points;
            }
        }
    }
    const double t = seconds_since(t0);
    // Curves rise with c2: a drop beyond 1e-6 in log-robustness breaks the trend.
    return {worst_gap < 1e-2 && worst_drop < 1e-6 && t < 300.0,
            std::to_string(points) + " points, max |log gap| " + fmt("%.3g", worst_gap) + ", max drop " +
                fmt("%.3g", worst_drop) + ", " + fmt("%.1f", t) + " s"};
}

// 5. Symmetric/GHZ scaling.
Outcome ghz_scaling() {
    double worst_closed = 0.0, worst_numeric = 0.0, worst_ent = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (double r : {0.2, 0.5, 1.0}) {
            const SymmetricSpec pure = ghz_spec(n, r, 0.0);
            const double target = std::exp(n * r);
            worst_closed = std::max(worst_closed, rel_err(exact_symmetric_nonclassicality(pure), target));
            worst_numeric = std::max({worst_numeric, rel_err(upper_bound(pure, Resource::Nonclassicality).value, target),
                                      rel_err(lower_bound_witness(pure, Resource::Nonclassicality).value, target)});
            const double e2r = std::exp(2 * r);
            const RobustnessBounds b0 = robustness(GhzInput{n, r, 0.0}, Resource::Entanglement);
            worst_ent = std::max({worst_ent, rel_err(b0.lower, e2r), rel_err(b0.upper, e2r),
                                  rel_err(b0.numeric_lower, e2r), rel_err(b0.numeric_upper, e2r)});
            for (double eta : {0.1, 0.3}) {
                const double t = std::max(std::exp(2 * r - 2 * eta), 1.0);
                const RobustnessBounds b = robustness(GhzInput{n, r, eta}, Resource::Entanglement);
                worst_ent = std::max({worst_ent, rel_err(b.upper, t), rel_err(b.numeric_upper, t)});
            }
        }
    }
    return {worst_closed < 1e-6 && worst_numeric < 1e-3 && worst_ent < 1e-3,
            "closed form " + fmt("%.3g", worst_closed) + ", numeric R_C " + fmt("%.3g", worst_numeric) +
                ", entanglement " + fmt("%.3g", worst_ent)};
}

// 6. Fock oracle equivalence and divergence verdicts.
Outcome fock_oracle() {
    double worst = 0.0;
    int feasible_ok = 0, divergent_ok = 0;
    std::string notes;
    for (int k = 0; k < 10; ++k) {
        const double r = 0.3 + 0.08 * k, nu = 1.0 + 0.05 * (k % 4);
        const double eta = 0.5 * std::log(nu);
        const double s = 0.5 * (r + eta) + 0.15 + 0.02 * k;
        const CovarianceMatrix g(diag2(nu * std::exp(2 * r), nu * std::exp(-2 * r)));
        const Matrix gs = diag2(std::exp(4 * s), 1.0);
        const LambdaResult lam = lambda_upper(g.matrix(), gs);
        const BruteForceLambda bf = brute_force_lambda(g, gs, 40);
        if (lam.exists && bf.stable && !bf.divergent) ++feasible_ok;
        worst = std::max(worst, rel_err(bf.value, lam.value));
    }
    for (int k = 0; k < 5; ++k) {
        const double r = 0.2 + 0.05 * k;
        const TwoModeStandardForm rho = squeezed_thermal(1.0 + 0.1 * k, 1.2, r);
        // Thermal two-mode squeezed free state, squeezed past rho so the transforms do not commute.
        const double s = r + 0.3, ns = 3.0;
        const TwoModeStandardForm sig{ns * std::cosh(2 * s), ns * std::cosh(2 * s), ns * std::sinh(2 * s),
                                      ns * std::sinh(2 * s)};
        const LambdaResult lam = lambda_upper(rho.expand().matrix(), sig.expand().matrix());
        const BruteForceLambda bf = brute_force_lambda(rho.expand(), sig.expand().matrix(), 12);
        if (lam.exists && bf.stable && !bf.divergent) ++feasible_ok;
        worst = std::max(worst, rel_err(bf.value, lam.value));
    }
    // Free states narrower than rho in some quadrature violate the existence condition.
    for (int k = 0; k < 5; ++k) {
        const double r = 0.6 + 0.1 * k;
        const TwoModeStandardForm rho = squeezed_thermal(1.0, 1.0, r);
        const double s = 0.5 * r - 0.1;
        const double ns = std::exp(2 * s);
        const TwoModeStandardForm sig{ns * std::cosh(2 * s), ns * std::cosh(2 * s), ns * std::sinh(2 * s),
                                      ns * std::sinh(2 * s)};
        const LambdaResult lam = lambda_upper(rho.expand().matrix(), sig.expand().matrix());
        const BruteForceLambda bf = brute_force_lambda(rho.expand(), sig.expand().matrix(), 12);
        if (!lam.exists && bf.divergent) ++divergent_ok;
    }
    return {worst < 1e-3 && feasible_ok == 15 && divergent_ok == 5,
            "max rel err " + fmt("%.3g", worst) + ", stable feasible " + std::to_string(feasible_ok) +
                "/15, divergent " + std::to_string(divergent_ok) + "/5"};
}

// 7. Witness extremality for three-mode symmetric witnesses.
Outcome witness_extremality() {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0, slowest = 0.0, min_overlap = 1.0;
    int done = 0;
    while (done < 5) {
        const double aw = 1.0 + 3.0 * u(rng), bw = 1.0 + 3.0 * u(rng);
        const double cw1 = (u(rng) - 0.3) * aw * 0.6, cw2 = (u(rng) - 0.7) * bw * 0.6;
        const WitnessEigen w = witness_eigen(3, aw, bw, cw1, cw2);
        if (!(w.a > 0 && w.b > 0 && w.c > 0 && w.d > 0) || !is_physical(witness_cm(w, 1.0)).physical) continue;
        const auto t0 = Clock::now();
        const WitnessVerification v = verify_witness(w, 4);
        slowest = std::max(slowest, seconds_since(t0));
        worst = std::max(worst, std::abs(v.m0 - 1.0));
        min_overlap = std::min(min_overlap, v.mean.vacuum_overlap);
        ++done;
    }
    return {worst < 1e-6 && min_overlap > 1.0 - 1e-6 && slowest <= 120.0,
            "max |M0 - 1| " + fmt("%.3g", worst) + ", min vacuum overlap " + fmt("%.10f", min_overlap) +
                ", slowest " + fmt("%.3f", slowest) + " s"};
}

// 8. Invariance under passive (orthogonal symplectic) transforms.
Outcome invariance() {
    std::mt19937_64 rng(99);
    int verdict_mismatch = 0;
    double worst_single = 0.0, worst_lambda = 0.0, worst_witness = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 3;
        // Mix classical and nonclassical inputs.
        const Matrix g = gres::testing::random_physical_cm(n, rng, k % 2 ? 0.8 : 0.05, 3.0);
        const Matrix o = gres::testing::random_orthogonal_symplectic(n, rng);
        const Matrix go = o * g * o.transpose();
        if (is_classical(CovarianceMatrix(g)).classical != is_classical(CovarianceMatrix(go)).classical)
            ++verdict_mismatch;
        try {
            classicality_invariance_check(CovarianceMatrix(g), o);
        } catch (const Error&) {
            ++verdict_mismatch;
        }
    }
    // Both bounds for single-mode states, which cover all passive transforms of the engine's inputs.
    std::uniform_real_distribution<double> ur(0.1, 1.2), unu(1.0, 2.0), uth(0.0, 2.0 * std::acos(-1.0));
    for (int k = 0; k < 100; ++k) {
        const double r = ur(rng), nu = unu(rng), th = uth(rng);
        const Matrix g = diag2(nu * std::exp(2 * r), nu * std::exp(-2 * r));
        Matrix rot(2, 2);
        rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        const CovarianceMatrix a(g), b(rot * g * rot.transpose());
        for (Resource res : {Resource::Nonclassicality}) {
            worst_single = std::max({worst_single,
                                     rel_err(lower_bound_witness(b, res).value, lower_bound_witness(a, res).value),
                                     rel_err(upper_bound(b, res).value, upper_bound(a, res).value)});
        }
    }
    // Two and three modes: Lambda and the Gaussian witness ratio commute with the transform.
    for (int k = 0; k < 100; ++k) {
        const int n = 2 + k % 2;
        const Matrix g = gres::testing::random_physical_cm(n, rng, 0.6, 2.0);
        Matrix gs = g + Matrix::Identity(2 * n, 2 * n) * 0.5;
        const Matrix gw = gres::testing::random_physical_cm(n, rng, 0.6, 2.0);
        const Matrix o = gres::testing::random_orthogonal_symplectic(n, rng);
        const LambdaResult l1 = lambda_upper(g, gs), l2 = lambda_upper(o * g * o.transpose(), o * gs * o.transpose());
        if (l1.exists != l2.exists) worst_lambda = 1.0;
        else if (l1.exists) worst_lambda = std::max(worst_lambda, rel_err(l2.value, l1.value));
        const Matrix id = Matrix::Identity(2 * n, 2 * n);
        auto ratio = [&](const Matrix& gg, const Matrix& ww) {
            return std::sqrt((ww + id).determinant() / (ww + gg).determinant());
        };
        worst_witness = std::max(worst_witness, rel_err(ratio(o * g * o.transpose(), o * gw * o.transpose()), ratio(g, gw)));
    }
    return {verdict_mismatch == 0 && worst_single < 1e-4 && worst_lambda < 1e-4 && worst_witness < 1e-4,
            "verdict mismatches " + std::to_string(verdict_mismatch) + ", single-mode bounds " +
                fmt("%.3g", worst_single) + ", Lambda " + fmt("%.3g", worst_lambda) + ", witness ratio " +
                fmt("%.3g", worst_witness)};
}

// 9. Williamson round trip and symplecticity.
Outcome williamson_properties() {
    std::mt19937_64 rng(4242);
    double worst_rt = 0.0, worst_sp = 0.0;
    for (int k = 0; k < 300; ++k) {
        const int n = 1 + k % 3;
        const Matrix g = gres::testing::random_physical_cm(n, rng, 1.0, 4.0);
        const SymplecticDecomposition d = williamson(g);
        Vector nu(2 * n);
        for (int i = 0; i < n; ++i) nu(i) = nu(n + i) = d.nu[i];
        const Matrix delta = symplectic_form(n);
        worst_rt = std::max(worst_rt, (d.S * nu.asDiagonal() * d.S.transpose() - g).cwiseAbs().maxCoeff());
        worst_sp = std::max(worst_sp, (d.S * delta * d.S.transpose() - delta).cwiseAbs().maxCoeff());
    }
    return {worst_rt < 1e-9 && worst_sp < 1e-9,
            "round trip " + fmt("%.3g", worst_rt) + ", symplecticity " + fmt("%.3g", worst_sp)};
}

}  // namespace

// Optional arguments select criteria by number; no arguments runs all of them.
int main(int argc, char** argv) {
    std::vector<std::string> only(argv + 1, argv + argc);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 single-mode exactness", single_mode_exactness},
        {"2 two-mode squeezed thermal branches", squeezed_thermal_branches},
        {"3 nonclassicality equals entanglement", nonclassicality_equals_entanglement},
        {"4 fig1 presets", fig1_reproduction},
        {"5 symmetric and GHZ scaling", ghz_scaling},
        {"6 Fock oracle equivalence", fock_oracle},
        {"7 witness extremality", witness_extremality},
        {"8 invariance suite", invariance},
        {"9 Williamson properties", williamson_properties},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), name.substr(0, name.find(' '))) == only.end()) continue;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
