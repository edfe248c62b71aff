#include <cmath>

#include "gres/bounds.hpp"

namespace gres {

namespace {

struct Analytic {
    bool has_lower = false, has_upper = false;
    double lower = 1.0, upper = 1.0;
    std::string lower_method, upper_method;
    bool conjecture = false;
};

RobustnessBounds combine(Resource r, const Analytic& an, Method m, const std::function<BoundResult()>& num_lower,
                         const std::function<BoundResult(double)>& num_upper) {
    RobustnessBounds out;
    out.resource = r;
    out.conjecture_conditional = an.conjecture;
    if (m == Method::Analytic) {
        if (!an.has_lower || !an.has_upper)
            fail(ErrorKind::Unsupported, std::string("no closed form for ") + resource_name(r) +
                                             " of this input; use --method numeric or auto");
    }
    if (m != Method::Analytic) {
        const BoundResult lo = num_lower();
        const BoundResult up = num_upper(lo.value);
        out.numeric_lower = lo.value;
        out.numeric_upper = up.value;
        out.converged = lo.converged && up.converged;
        out.lower = lo.value;
        out.upper = up.value;
        out.lower_method = lo.method;
        out.upper_method = up.method;
    }
    if (m != Method::Numeric) {
        // A closed-form pair is exact and replaces the numeric values, so proven
        // equalities are reported without optimizer noise.
        if (an.has_lower && (m == Method::Analytic || an.has_upper || an.lower > out.lower)) {
            out.lower = an.lower;
            out.lower_method = an.lower_method;
        }
        if (an.has_upper) {
            out.upper = an.upper;
            out.upper_method = an.upper_method;
        }
    }
    out.lower = std::max(out.lower, 1.0);
    out.upper = std::max(out.upper, 1.0);
    out.gap = out.upper - out.lower;
    return out;
}

RobustnessBounds single_mode(const Matrix& g, Resource r, Method m) {
    const CovarianceMatrix cm(g);
    Analytic an;
    if (r == Resource::Entanglement) {
        an.has_lower = an.has_upper = true;
        an.lower_method = an.upper_method = "trivial:single-mode";
    } else {
        an.has_lower = an.has_upper = true;
        an.lower = an.upper = exact_single_mode(g(0, 0), g(1, 1), g(0, 1));
        an.lower_method = an.upper_method = "analytic:single-mode";
    }
    return combine(r, an, m, [&] { return lower_bound_witness(cm, r); }, [&](double) { return upper_bound(cm, r); });
}

RobustnessBounds two_mode(const TwoModeStandardForm& s, Resource r, Method m) {
    Analytic an;
    if (std::abs(s.c1 - s.c2) <= 1e-12 * std::max(1.0, std::abs(s.c1))) {
        const BranchValue bv = exact_two_mode_squeezed_thermal(s.a, s.b, std::abs(s.c1));
        an.has_lower = an.has_upper = true;
        an.lower = an.upper = bv.value;
        an.lower_method = an.upper_method = "analytic:squeezed-thermal-branch-" + std::to_string(bv.branch);
    } else if (r == Resource::Nonclassicality) {
        an.has_lower = true;
        an.lower = chart_single_block(s);
        an.lower_method = "analytic:single-block";
    }
    return combine(r, an, m, [&] { return lower_bound_witness(s, r); }, [&](double lo) { return upper_bound(s, r, lo); });
}

RobustnessBounds symmetric(const SymmetricSpec& s, Resource r, Method m, bool ghz, double r_sq = 0.0,
                           double eta = 0.0) {
    Analytic an;
    if (r == Resource::Nonclassicality) {
        an.has_lower = an.has_upper = true;
        an.lower = an.upper = exact_symmetric_nonclassicality(s);
        an.lower_method = an.upper_method = "analytic:symmetric";
    } else {
        an.has_lower = true;
        an.lower = symmetric_entanglement_lower(s);
        an.lower_method = "analytic:symmetric-witness";
        an.conjecture = s.n >= 4;
        if (ghz) {
            const RobustnessBounds gb = ghz_entanglement_bounds(s.n, r_sq, eta);
            an.has_upper = true;
            an.upper = gb.upper;
            an.upper_method = gb.upper_method;
        }
    }
    return combine(r, an, m, [&] { return lower_bound_witness(s, r); }, [&](double) { return upper_bound(s, r); });
}

}  // namespace

RobustnessBounds robustness(const FamilyInput& input, Resource r, Method m) {
    if (const auto* sm = std::get_if<SingleModeInput>(&input)) {
        Matrix g(2, 2);
        g << sm->a, sm->c, sm->c, sm->b;
        if (!is_physical(g).physical) fail(ErrorKind::InvalidArgument, "single-mode parameters are unphysical");
        return single_mode(g, r, m);
    }
    if (const auto* ts = std::get_if<TwoModeStandardForm>(&input)) {
        if (!is_physical(ts->expand()).physical) fail(ErrorKind::InvalidArgument, "standard-form parameters are unphysical");
        return two_mode(*ts, r, m);
    }
    if (const auto* ss = std::get_if<SymmetricSpec>(&input)) {
        if (ss->n < 2) fail(ErrorKind::InvalidArgument, "symmetric family needs n >= 2");
        if (!is_physical(ss->expand()).physical) fail(ErrorKind::InvalidArgument, "symmetric parameters are unphysical");
        return symmetric(*ss, r, m, false);
    }
    if (const auto* gi = std::get_if<GhzInput>(&input)) {
        return symmetric(ghz_spec(gi->n, gi->r, gi->eta), r, m, true, gi->r, gi->eta);
    }
    const auto& cm = std::get<CovarianceMatrix>(input);
    if (!is_physical(cm).physical) fail(ErrorKind::InvalidArgument, "covariance matrix is unphysical");
    if (cm.modes() == 1) return single_mode(cm.matrix(), r, m);
    if (cm.modes() == 2)
        if (auto s = detect_standard_form(cm.matrix())) return two_mode(*s, r, m);
    if (auto s = detect_symmetric(cm.matrix())) return symmetric(*s, r, m, false);
    fail(ErrorKind::Unsupported,
         "unsupported input; supported families: single-mode (any 2x2 CM), two-mode standard form, "
         "n-mode symmetric, GHZ");
}

}  // namespace gres
